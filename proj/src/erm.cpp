#include "ltnn/erm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "ltnn/errors.hpp"
#include "ltnn/linalg.hpp"
#include "ltnn/lp.hpp"

namespace ltnn {

void Dataset::check() const {
  if (points.empty()) throw InputError("dataset is empty");
  if (labels.size() != points.size()) {
    throw InputError(std::to_string(points.size()) + " points but " + std::to_string(labels.size()) + " labels");
  }
  const std::size_t n = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw InputError("point " + std::to_string(i) + " has the wrong dimension");
  }
  std::map<Vec, std::size_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [it, inserted] = seen.emplace(points[i], i);
    if (!inserted) {
      throw InputError("duplicate data point " + to_string(points[i]) + " at rows " + std::to_string(it->second) +
                       " and " + std::to_string(i));
    }
  }
}

std::string to_string(Loss loss) { return loss == Loss::Abs ? "abs" : "square"; }

Loss parse_loss(const std::string& text) {
  if (text == "abs") return Loss::Abs;
  if (text == "square") return Loss::Square;
  throw InputError("unknown loss \"" + text + "\" (expected abs or square)");
}

namespace {

Rational loss_of(const Rational& pred, const Rational& y, Loss loss) {
  const Rational r = pred - y;
  return loss == Loss::Abs ? Rational(abs(r)) : Rational(r * r);
}

}  // namespace

OutputFit fit_design(const Mat& design, const Vec& y, Loss loss) {
  const std::size_t d = y.size();
  if (design.size() != d) throw InputError("design matrix and labels disagree in length");
  const std::size_t cols = d == 0 ? 0 : design.front().size();
  OutputFit fit{Vec(cols, Rational(0)), Rational(0)};
  if (cols == 0) {
    for (const auto& v : y) fit.value += loss_of(0, v, loss);
    return fit;
  }
  if (loss == Loss::Square) {
    fit.weights = linalg::min_norm_least_squares(design, y, cols);
  } else {
    LinearProgram lp;
    lp.num_vars = cols + d;
    lp.objective.assign(cols + d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) lp.objective[cols + i] = -1;
    for (std::size_t i = 0; i < d; ++i) {
      Vec up(cols + d, Rational(0)), down(cols + d, Rational(0));
      for (std::size_t j = 0; j < cols; ++j) {
        up[j] = design[i][j];
        down[j] = -design[i][j];
      }
      up[cols + i] = -1;
      down[cols + i] = -1;
      lp.add(std::move(up), Relation::Leq, y[i]);
      lp.add(std::move(down), Relation::Leq, -y[i]);
    }
    const auto res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) throw std::logic_error("absolute-loss fit LP did not reach an optimum");
    fit.weights.assign(res.witness.begin(), res.witness.begin() + static_cast<std::ptrdiff_t>(cols));
  }
  for (std::size_t i = 0; i < d; ++i) fit.value += loss_of(dot(design[i], fit.weights), y[i], loss);
  return fit;
}

OutputFit solve_output_weights(const std::vector<Bits>& delta, const Vec& y, Loss loss) {
  Mat design;
  design.reserve(delta.size());
  for (const auto& row : delta) {
    Vec r;
    r.reserve(row.size());
    for (auto b : row) {
      if (b > 1) throw InputError("delta entries must be 0 or 1");
      r.emplace_back(b);
    }
    design.push_back(std::move(r));
  }
  return fit_design(design, y, loss);
}

const CollectionTable& layer_candidates(CollectionCache& cache, std::size_t m) { return cache.get(m); }

Rational empirical_risk(const Network& net, const Dataset& data, Loss loss) {
  Rational total = 0;
  for (std::size_t i = 0; i < data.size(); ++i) total += loss_of(forward(net, data.points[i]), data.labels[i], loss);
  return total / static_cast<long>(data.size());
}

namespace {

// Odometer over index tuples; nondecreasing tuples only when `sorted`.
class TupleIterator {
 public:
  TupleIterator(std::size_t length, std::size_t base, bool sorted) : digits_(length, 0), base_(base), sorted_(sorted) {
    done_ = base == 0 && length > 0;
  }
  bool done() const { return done_; }
  const std::vector<std::size_t>& digits() const { return digits_; }
  void advance() {
    std::size_t i = digits_.size();
    while (i > 0) {
      --i;
      if (digits_[i] + 1 < base_) {
        ++digits_[i];
        for (std::size_t j = i + 1; j < digits_.size(); ++j) digits_[j] = sorted_ ? digits_[i] : 0;
        return;
      }
    }
    done_ = true;
  }

 private:
  std::vector<std::size_t> digits_;
  std::size_t base_;
  bool sorted_;
  bool done_ = false;
};

struct Candidate {
  Rational value;
  std::size_t outer = 0;
  std::size_t inner = 0;
  std::vector<std::size_t> first;  // dichotomy table indices
  std::vector<std::size_t> later;  // collection table indices, layer by layer
  std::vector<Mask> key;
  Vec weights;  // fit on key columns
};

bool better(const Candidate& a, const std::optional<Candidate>& b) {
  if (!b) return true;
  return std::tie(a.value, a.outer, a.inner) < std::tie(b->value, b->outer, b->inner);
}

class Trainer {
 public:
  Trainer(const Dataset& data, const Architecture& arch, const TrainOptions& options, bool shortcut)
      : data_(data), arch_(arch), options_(options), shortcut_(shortcut) {}

  TrainResult run() {
    data_.check();
    const std::size_t n = data_.dim();
    if (arch_.input_dim != 0 && arch_.input_dim != n) {
      throw InputError("architecture expects input dimension " + std::to_string(arch_.input_dim) + ", data has " +
                       std::to_string(n));
    }
    if (arch_.widths.empty()) throw InputError("architecture needs at least one hidden layer");
    for (auto w : arch_.widths) {
      if (w == 0) throw InputError("hidden layer widths must be positive");
    }
    if (shortcut_ && options_.output_bias) throw InputError("output bias applies to LT networks only");
    if (data_.size() > kMaxPoints) throw InputError("at most 64 data points are supported");
    const std::size_t k = arch_.widths.size();
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (arch_.widths[i] > options_.collection_cap) {
        throw RefusalError("hidden layer " + std::to_string(i + 1) + " has width " + std::to_string(arch_.widths[i]) +
                           ", above the collection cap " + std::to_string(options_.collection_cap));
      }
    }

    std::optional<CollectionCache> own;
    CollectionCache* cache = options_.cache;
    if (!cache || cache->cap() < options_.collection_cap) {
      own.emplace(cache ? cache->dir() : std::filesystem::path{}, options_.collection_cap);
      cache = &*own;
    }
    dichotomies_ = enumerate_separable_subsets(data_.points);
    tables_.clear();
    for (std::size_t i = 1; i < k; ++i) tables_.push_back(&layer_candidates(*cache, arch_.widths[i - 1]));

    const std::size_t threads = std::max<std::size_t>(1, options_.threads);
    std::vector<std::optional<Candidate>> best(threads);
    std::vector<std::size_t> examined(threads, 0);
    if (threads == 1) {
      search(0, 1, best[0], examined[0]);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            search(t, threads, best[t], examined[t]);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    std::optional<Candidate> winner;
    std::size_t total = 0;
    for (std::size_t t = 0; t < threads; ++t) {
      total += examined[t];
      if (best[t] && better(*best[t], winner)) winner = best[t];
    }
    if (!winner) throw std::logic_error("no candidate was examined");
    return build(*winner, total);
  }

 private:
  // Columns of every hidden layer as masks over the data points.
  std::vector<Mask> last_columns(const std::vector<std::size_t>& first, const std::vector<std::size_t>& later) const {
    const std::size_t d = data_.size();
    std::vector<Mask> cols;
    cols.reserve(first.size());
    for (std::size_t t : first) cols.push_back(dichotomies_.entries[t].subset);
    std::size_t offset = 0;
    for (std::size_t layer = 0; layer < tables_.size(); ++layer) {
      std::vector<Mask> patterns(d, 0);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t p = 0; p < d; ++p) {
          if (test_bit(cols[j], p)) patterns[p] |= Mask{1} << j;
        }
      }
      const std::size_t width = arch_.widths[layer + 1];
      std::vector<Mask> next(width, 0);
      for (std::size_t j = 0; j < width; ++j) {
        const Mask collection = tables_[layer]->entries[later[offset + j]].collection;
        for (std::size_t p = 0; p < d; ++p) {
          if (test_bit(collection, patterns[p])) next[j] |= Mask{1} << p;
        }
      }
      offset += width;
      cols = std::move(next);
    }
    return cols;
  }

  static std::vector<Mask> key_of(std::vector<Mask> cols) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (!cols.empty() && cols.front() == 0) cols.erase(cols.begin());
    return cols;
  }

  Mat design_for(const std::vector<Mask>& key) const {
    const std::size_t d = data_.size();
    const std::size_t n = data_.dim();
    Mat design(d);
    for (std::size_t p = 0; p < d; ++p) {
      if (options_.output_bias) design[p].emplace_back(1);
      for (Mask c : key) {
        const bool on = test_bit(c, p);
        if (shortcut_) {
          for (std::size_t i = 0; i < n; ++i) design[p].push_back(on ? data_.points[p][i] : Rational(0));
        }
        design[p].emplace_back(on ? 1 : 0);
      }
    }
    return design;
  }

  const OutputFit& fit(const std::vector<Mask>& key) {
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    OutputFit f = fit_design(design_for(key), data_.labels, options_.loss);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return memo_.emplace(key, std::move(f)).first->second;
  }

  void search(std::size_t thread, std::size_t threads, std::optional<Candidate>& best, std::size_t& examined) {
    std::size_t later_digits = 0;
    for (std::size_t layer = 0; layer < tables_.size(); ++layer) {
      later_digits += arch_.widths[layer + 1];
    }
    std::size_t outer = 0;
    for (TupleIterator first(arch_.widths[0], dichotomies_.size(), options_.symmetry_reduction); !first.done();
         first.advance(), ++outer) {
      if (outer % threads != thread) continue;
      std::size_t inner = 0;
      std::vector<std::size_t> later(later_digits, 0);
      for (bool more = true; more; ++inner) {
        ++examined;
        const auto key = key_of(last_columns(first.digits(), later));
        const OutputFit& f = fit(key);
        if (!best || std::tie(f.value, outer, inner) < std::tie(best->value, best->outer, best->inner)) {
          best = Candidate{f.value, outer, inner, first.digits(), later, key, f.weights};
        }
        more = next_later(later);
      }
    }
  }

  bool next_later(std::vector<std::size_t>& later) const {
    std::size_t pos = later.size();
    std::size_t layer = tables_.size();
    std::size_t remaining = 0;
    while (pos > 0) {
      if (remaining == 0) {
        --layer;
        remaining = arch_.widths[layer + 1];
      }
      --pos;
      --remaining;
      if (later[pos] + 1 < tables_[layer]->size()) {
        ++later[pos];
        return true;
      }
      later[pos] = 0;
    }
    return false;
  }

  TrainResult build(const Candidate& c, std::size_t examined) {
    const std::size_t n = data_.dim();
    const std::size_t k = arch_.widths.size();
    std::vector<Layer> hidden;
    Certificate cert;
    Layer first;
    for (std::size_t t : c.first) {
      const auto& e = dichotomies_.entries[t];
      first.weights.push_back(e.witness.a);
      first.bias.push_back(e.witness.b);
      cert.dichotomies.push_back(e.subset);
    }
    hidden.push_back(std::move(first));
    std::size_t offset = 0;
    for (std::size_t layer = 0; layer + 1 < k; ++layer) {
      Layer l;
      std::vector<Mask> masks;
      for (std::size_t j = 0; j < arch_.widths[layer + 1]; ++j) {
        const auto& e = tables_[layer]->entries[c.later[offset + j]];
        l.weights.push_back(e.witness.alpha);
        l.bias.push_back(e.witness.beta);
        masks.push_back(e.collection);
      }
      offset += arch_.widths[layer + 1];
      hidden.push_back(std::move(l));
      cert.collections.push_back(std::move(masks));
    }

    const auto cols = last_columns(c.first, c.later);
    const std::size_t per = shortcut_ ? n + 1 : 1;
    const std::size_t base = options_.output_bias ? 1 : 0;
    auto coefficients = [&](Mask col, std::size_t j) -> std::optional<std::size_t> {
      if (col == 0) return std::nullopt;
      if (std::find(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(j), col) !=
          cols.begin() + static_cast<std::ptrdiff_t>(j)) {
        return std::nullopt;
      }
      const auto pos = static_cast<std::size_t>(std::lower_bound(c.key.begin(), c.key.end(), col) - c.key.begin());
      return base + pos * per;
    };

    TrainResult r;
    const std::size_t w = cols.size();
    if (shortcut_) {
      SltNetwork net{n, std::move(hidden), Mat(n, Vec(w, Rational(0))), Vec(w, Rational(0))};
      for (std::size_t j = 0; j < w; ++j) {
        if (auto at = coefficients(cols[j], j)) {
          for (std::size_t i = 0; i < n; ++i) net.shortcut_a[i][j] = c.weights[*at + i];
          net.shortcut_b[j] = c.weights[*at + n];
        }
      }
      r.network = std::move(net);
    } else {
      LtNetwork net{n, std::move(hidden), {Vec(w, Rational(0)), Rational(0)}};
      if (options_.output_bias) net.output.bias = c.weights[0];
      for (std::size_t j = 0; j < w; ++j) {
        if (auto at = coefficients(cols[j], j)) net.output.weights[j] = c.weights[*at];
      }
      r.network = std::move(net);
    }
    r.total_loss = c.value;
    r.optimum = c.value / static_cast<long>(data_.size());
    r.candidates_examined = examined;
    r.distinct_fits = memo_.size();
    r.certificate = std::move(cert);
    if (empirical_risk(r.network, data_, options_.loss) != r.optimum) {
      throw std::logic_error("trained network does not reproduce the certified optimum");
    }
    return r;
  }

  const Dataset& data_;
  const Architecture& arch_;
  const TrainOptions& options_;
  const bool shortcut_;
  DichotomyTable dichotomies_;
  std::vector<const CollectionTable*> tables_;
  std::mutex memo_mutex_;
  std::map<std::vector<Mask>, OutputFit> memo_;
};

}  // namespace

TrainResult train_lt(const Dataset& data, const Architecture& arch, const TrainOptions& options) {
  return Trainer(data, arch, options, false).run();
}

TrainResult train_slt(const Dataset& data, const Architecture& arch, const TrainOptions& options) {
  return Trainer(data, arch, options, true).run();
}

TrainResult train(const Dataset& data, const Architecture& arch, const TrainOptions& options) {
  return arch.shortcut ? train_slt(data, arch, options) : train_lt(data, arch, options);
}

}  // namespace ltnn
