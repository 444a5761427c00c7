#include "ltnn/separability.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ltnn/errors.hpp"
#include "ltnn/lp.hpp"

namespace ltnn {

namespace {

std::size_t check_points(const std::vector<Vec>& points) {
  if (points.size() > kMaxPoints) {
    throw InputError("at most " + std::to_string(kMaxPoints) + " points are supported, got " +
                     std::to_string(points.size()));
  }
  const std::size_t n = points.empty() ? 0 : points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) {
      throw InputError("point " + std::to_string(i) + " has dimension " + std::to_string(points[i].size()) +
                       ", expected " + std::to_string(n));
    }
  }
  return n;
}

HalfspaceWitness constant_witness(std::size_t n, int b) { return {Vec(n, Rational(0)), Rational(b)}; }

// maximize t s.t. ⟨a,x⟩+b ≥ t on the subset, ⟨a,x⟩+b ≤ 0 off it, t ≤ 1,
// over the first `count` points.
std::optional<HalfspaceWitness> separate_prefix(const std::vector<Vec>& points, std::size_t count, std::size_t n,
                                                Mask subset) {
  const Mask restricted = subset & full_mask(count);
  if (restricted == 0) return constant_witness(n, -1);
  if (restricted == full_mask(count)) return constant_witness(n, 1);

  LinearProgram lp;
  lp.num_vars = n + 2;
  lp.objective.assign(n + 2, Rational(0));
  lp.objective[n + 1] = 1;
  for (std::size_t i = 0; i < count; ++i) {
    Vec row(n + 2);
    for (std::size_t j = 0; j < n; ++j) row[j] = points[i][j];
    row[n] = 1;
    if (test_bit(restricted, i)) {
      row[n + 1] = -1;
      lp.add(std::move(row), Relation::Geq, 0);
    } else {
      row[n + 1] = 0;
      lp.add(std::move(row), Relation::Leq, 0);
    }
  }
  Vec cap(n + 2, Rational(0));
  cap[n + 1] = 1;
  lp.add(std::move(cap), Relation::Leq, 1);

  const auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal || r.optimum <= 0) return std::nullopt;
  Vec ab(r.witness.begin(), r.witness.begin() + static_cast<long>(n + 1));
  ab = primitive_integer(ab);
  HalfspaceWitness w;
  w.b = ab.back();
  ab.pop_back();
  w.a = std::move(ab);
  return w;
}

}  // namespace

std::optional<std::size_t> DichotomyTable::find(Mask subset) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), subset,
                             [](const Dichotomy& d, Mask m) { return d.subset < m; });
  if (it == entries.end() || it->subset != subset) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

std::optional<HalfspaceWitness> separate_subset(const std::vector<Vec>& points, Mask subset) {
  const std::size_t n = check_points(points);
  if ((subset & ~full_mask(points.size())) != 0) throw InputError("subset indexes points that do not exist");
  return separate_prefix(points, points.size(), n, subset);
}

DichotomyTable enumerate_separable_subsets(const std::vector<Vec>& points) {
  const std::size_t n = check_points(points);
  {
    std::set<Vec> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!seen.insert(points[i]).second) {
        throw InputError("duplicate point " + to_string(points[i]) + " at index " + std::to_string(i));
      }
    }
  }

  DichotomyTable table;
  table.points = points;
  std::vector<Dichotomy> level{{0, constant_witness(n, -1)}};
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::vector<Dichotomy> next;
    next.reserve(level.size() * 2);
    const Mask bit = Mask{1} << k;
    for (const auto& d : level) {
      // The prefix witness already decides point k one way; only the other
      // extension needs an LP.
      const bool inside = d.witness.contains(points[k]);
      const Mask kept = inside ? (d.subset | bit) : d.subset;
      const Mask flipped = inside ? d.subset : (d.subset | bit);
      next.push_back({kept, d.witness});
      if (auto w = separate_prefix(points, k + 1, n, flipped)) next.push_back({flipped, std::move(*w)});
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const Dichotomy& a, const Dichotomy& b) { return a.subset < b.subset; });
  table.entries = std::move(level);
  return table;
}

bool verify_table(const DichotomyTable& table) {
  std::set<Mask> seen;
  for (const auto& e : table.entries) {
    if (!seen.insert(e.subset).second) return false;
    for (std::size_t i = 0; i < table.points.size(); ++i) {
      if (e.witness.contains(table.points[i]) != test_bit(e.subset, i)) return false;
    }
  }
  return true;
}

bool CollectionWitness::accepts(Mask subset) const {
  Rational s = beta;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (test_bit(subset, i)) s += alpha[i];
  }
  return s > 0;
}

std::vector<Vec> hypercube_vertices(std::size_t m) {
  if (m > kHardCollectionLimit) throw RefusalError("collections are limited to m <= 6");
  std::vector<Vec> v;
  for (Mask a = 0; a < (Mask{1} << m); ++a) {
    Vec p(m);
    for (std::size_t s = 0; s < m; ++s) p[s] = test_bit(a, s) ? 1 : 0;
    v.push_back(std::move(p));
  }
  return v;
}

std::optional<CollectionWitness> separate_collection(std::size_t m, Mask collection) {
  auto w = separate_subset(hypercube_vertices(m), collection);
  if (!w) return std::nullopt;
  return CollectionWitness{std::move(w->a), std::move(w->b)};
}

CollectionTable enumerate_collections(std::size_t m, std::size_t cap) {
  if (m > cap) {
    throw RefusalError("enumerating linearly separable collections for m = " + std::to_string(m) +
                       " exceeds the collection cap " + std::to_string(cap) + " (the candidate space has 2^(2^" +
                       std::to_string(m) + ") collections)");
  }
  if (m == 0) throw InputError("collections need m >= 1");
  const auto table = enumerate_separable_subsets(hypercube_vertices(m));
  CollectionTable out;
  out.m = m;
  out.entries.reserve(table.size());
  for (const auto& e : table.entries) out.entries.push_back({e.subset, {e.witness.a, e.witness.b}});
  return out;
}

bool verify_table(const CollectionTable& table) {
  std::set<Mask> seen;
  const Mask subsets = Mask{1} << table.m;
  for (const auto& e : table.entries) {
    if (e.witness.alpha.size() != table.m) return false;
    if (!seen.insert(e.collection).second) return false;
    for (Mask a = 0; a < subsets; ++a) {
      if (e.witness.accepts(a) != test_bit(e.collection, a)) return false;
    }
  }
  return true;
}

namespace {
constexpr const char* kTableMagic = "ltnn-collection-table 1";
}

std::string serialize_collection_table(const CollectionTable& table) {
  std::ostringstream os;
  os << kTableMagic << '\n' << "m " << table.m << '\n' << "entries " << table.entries.size() << '\n';
  for (const auto& e : table.entries) {
    os << std::hex << e.collection << std::dec;
    for (const auto& a : e.witness.alpha) os << ' ' << to_string(a);
    os << ' ' << to_string(e.witness.beta) << '\n';
  }
  return os.str();
}

CollectionTable deserialize_collection_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::string {
    if (!std::getline(is, line)) throw ParseError("line " + std::to_string(lineno + 1), "unexpected end of table");
    ++lineno;
    return line;
  };
  auto where = [&] { return "line " + std::to_string(lineno); };

  if (next_line() != kTableMagic) throw ParseError(where(), "not a collection table (bad header)");
  CollectionTable table;
  std::size_t count = 0;
  {
    std::istringstream ls(next_line());
    std::string key;
    if (!(ls >> key >> table.m) || key != "m" || table.m == 0 || table.m > kHardCollectionLimit) {
      throw ParseError(where(), "expected \"m <1..6>\"");
    }
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    if (!(ls >> key >> count) || key != "entries") throw ParseError(where(), "expected \"entries <count>\"");
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream ls(next_line());
    std::string hex;
    if (!(ls >> hex)) throw ParseError(where(), "missing collection mask");
    CollectionEntry e;
    try {
      std::size_t used = 0;
      e.collection = std::stoull(hex, &used, 16);
      if (used != hex.size()) throw std::invalid_argument(hex);
    } catch (const std::exception&) {
      throw ParseError(where(), "bad collection mask \"" + hex + "\"");
    }
    std::vector<std::string> fields;
    std::string tok;
    while (ls >> tok) fields.push_back(tok);
    if (fields.size() != table.m + 1) throw ParseError(where(), "expected " + std::to_string(table.m + 1) + " weights");
    try {
      for (std::size_t s = 0; s < table.m; ++s) e.witness.alpha.push_back(parse_rational(fields[s]));
      e.witness.beta = parse_rational(fields.back());
    } catch (const ParseError& err) {
      throw ParseError(where(), err.what());
    }
    for (Mask a = 0; a < (Mask{1} << table.m); ++a) {
      if (e.witness.accepts(a) != test_bit(e.collection, a)) throw ParseError(where(), "witness does not induce its collection");
    }
    if (!table.entries.empty() && table.entries.back().collection >= e.collection) {
      throw ParseError(where(), "entries out of order or duplicated");
    }
    table.entries.push_back(std::move(e));
  }
  if (std::getline(is, line) && !line.empty()) throw ParseError("line " + std::to_string(lineno + 1), "trailing data");
  return table;
}

CollectionCache::CollectionCache(std::filesystem::path dir, std::size_t cap) : dir_(std::move(dir)), cap_(cap) {}

const CollectionTable& CollectionCache::get(std::size_t m) {
  std::lock_guard lock(mutex_);
  if (auto it = tables_.find(m); it != tables_.end()) return *it->second;
  if (m > cap_) {
    throw RefusalError("layer width " + std::to_string(m) + " feeds a later hidden layer, which exceeds the collection cap " +
                       std::to_string(cap_) + " (|L_m| grows like 2^(m^2))");
  }
  std::unique_ptr<CollectionTable> table;
  std::filesystem::path file;
  if (!dir_.empty()) {
    file = dir_ / ("collections_m" + std::to_string(m) + ".txt");
    std::ifstream in(file);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        auto loaded = deserialize_collection_table(buf.str());
        if (loaded.m == m) table = std::make_unique<CollectionTable>(std::move(loaded));
      } catch (const ParseError&) {
        // Stale or corrupt cache file; regenerate below.
      }
    }
  }
  if (!table) {
    table = std::make_unique<CollectionTable>(enumerate_collections(m, cap_));
    if (!file.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      std::ofstream out(file);
      if (out) out << serialize_collection_table(*table);
    }
  }
  auto& ref = *table;
  tables_.emplace(m, std::move(table));
  return ref;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer general_position_count(std::size_t num_points, std::size_t dim) {
  if (num_points == 0) return 1;
  Integer s = 0;
  for (std::size_t k = 0; k <= dim; ++k) s += binomial(num_points - 1, k);
  return 2 * s;
}

Integer quoted_subset_bound(std::size_t num_points, std::size_t dim) { return 2 * binomial(num_points, dim); }

}  // namespace ltnn
