#include "ltnn/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltnn/compiler.hpp"
#include "ltnn/config.hpp"
#include "ltnn/csv_io.hpp"
#include "ltnn/errors.hpp"
#include "ltnn/erm.hpp"
#include "ltnn/json_io.hpp"
#include "ltnn/oracle.hpp"
#include "ltnn/spec_io.hpp"

namespace ltnn::cli {

namespace {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string hex(Mask m) {
  std::ostringstream ss;
  ss << "0x" << std::hex << m;
  return ss.str();
}

json mismatch_json(const oracle::MismatchReport& r, std::size_t limit) {
  json examples = json::array();
  for (std::size_t i = 0; i < r.mismatches.size() && i < limit; ++i) {
    const auto& m = r.mismatches[i];
    examples.push_back({{"point", json_io::to_json(m.point)},
                        {"expected", json_io::to_json(m.expected)},
                        {"got", json_io::to_json(m.got)}});
  }
  return {{"total_samples", r.total_samples},
          {"mismatches", r.mismatches.size()},
          {"seed", r.seed},
          {"examples", examples}};
}

struct Settings {
  std::string config_path;
  std::size_t collection_cap = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string cache_dir;
  CLI::Option* cap_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* cache_opt = nullptr;

  Config resolve() const {
    Config c;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("LTNN_CONFIG")) path = env;
    }
    if (!path.empty()) c = load_config(path);
    if (cap_opt && cap_opt->count()) c.collection_cap = collection_cap;
    if (samples_opt && samples_opt->count()) c.sample_count = samples;
    if (seed_opt && seed_opt->count()) c.seed = seed;
    if (threads_opt && threads_opt->count()) c.parallelism = threads;
    if (cache_opt && cache_opt->count()) c.cache_dir = cache_dir;
    if (c.collection_cap == 0) throw InputError("collection cap must be positive");
    return c;
  }
};

}  // namespace

std::vector<std::size_t> parse_widths(const std::string& text) {
  std::vector<std::size_t> widths;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    unsigned long w = 0;
    try {
      w = std::stoul(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || w == 0) {
      throw InputError("architecture \"" + text + "\" must be a comma-separated list of positive widths");
    }
    widths.push_back(w);
  }
  if (widths.empty()) throw InputError("architecture is empty");
  return widths;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact compilation and training of linear threshold networks", "ltnn"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--config", s.config_path, "JSON config file (default: $LTNN_CONFIG)");

  auto* train = app.add_subcommand("train", "Certified global ERM on a CSV dataset");
  std::string data_path, arch_text, loss_text = "abs", network_out = "network.json", result_out;
  bool shortcut = false, no_reduction = false, output_bias = false, timing = false;
  train->add_option("data", data_path, "CSV with header x1,...,xn,y")->required();
  train->add_option("--arch", arch_text, "Hidden widths, e.g. 2,1")->required();
  train->add_option("--loss", loss_text, "abs or square")->check(CLI::IsMember({"abs", "square"}));
  train->add_flag("--shortcut", shortcut, "Train a shortcut (SLT) network");
  train->add_flag("--no-symmetry-reduction", no_reduction, "Enumerate ordered first-layer tuples");
  train->add_flag("--output-bias", output_bias, "Fit an output bias (LT only)");
  train->add_flag("--timing", timing, "Include wall time in the result");
  train->add_option("-o,--network", network_out, "Network output file");
  train->add_option("--result", result_out, "Also write the result JSON here");
  s.cap_opt = train->add_option("--collection-cap", s.collection_cap, "Largest width feeding a later layer");
  s.threads_opt = train->add_option("--threads", s.threads, "Worker threads (0 = auto)");
  s.cache_opt = train->add_option("--cache-dir", s.cache_dir, "Directory for collection tables");

  auto* compile = app.add_subcommand("compile", "Compile a function spec into a network");
  std::string spec_path, mode_text = "exact", compile_out = "network.json";
  bool no_validate = false;
  compile->add_option("spec", spec_path, "Function spec JSON")->required();
  compile->add_option("--mode", mode_text, "exact, ae, slt or slt-cpwl")
      ->check(CLI::IsMember({"exact", "ae", "slt", "slt-cpwl"}));
  compile->add_option("-o,--network", compile_out, "Network output file");
  compile->add_flag("--no-validate", no_validate, "Skip full complex validation");

  auto* eval = app.add_subcommand("eval", "Evaluate a network on CSV points");
  std::string eval_net, points_path, values_out;
  eval->add_option("network", eval_net, "Network JSON")->required();
  eval->add_option("points", points_path, "CSV with header x1,...,xn")->required();
  eval->add_option("-o,--output", values_out, "Values CSV (default stdout)");

  auto* verify = app.add_subcommand("verify", "Compare a network with a spec on seeded samples");
  std::string verify_net, verify_spec;
  bool open_cells = false;
  verify->add_option("network", verify_net, "Network JSON")->required();
  verify->add_option("spec", verify_spec, "Function spec JSON")->required();
  s.samples_opt = verify->add_option("--samples", s.samples, "Random samples");
  s.seed_opt = verify->add_option("--seed", s.seed, "Sampling seed");
  verify->add_flag("--open-cells", open_cells, "Sample open full-dimensional cells only");

  auto* count = app.add_subcommand("count", "Count separable subsets or collections");
  std::string count_points;
  std::size_t collections_m = 0;
  auto* points_opt = count->add_option("points", count_points, "CSV with header x1,...,xn");
  auto* coll_opt = count->add_option("--collections", collections_m, "Count 𝓛_m instead");
  points_opt->excludes(coll_opt);
  auto* count_cap = count->add_option("--collection-cap", s.collection_cap, "Largest m allowed");

  auto* generate = app.add_subcommand("generate", "Emit the parity or braid network");
  std::string kind, generate_out;
  std::size_t gen_n = 0;
  generate->add_option("kind", kind, "parity or braid")->required()->check(CLI::IsMember({"parity", "braid"}));
  generate->add_option("n", gen_n, "Input dimension")->required();
  generate->add_option("-o,--network", generate_out, "Network output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (count->parsed() && count_cap->count()) s.cap_opt = count_cap;
    const Config config = s.resolve();

    if (train->parsed()) {
      const auto data = csv::to_dataset(csv::read_file(data_path), data_path);
      Architecture arch{data.dim(), parse_widths(arch_text), shortcut};
      CollectionCache cache(config.cache_dir, config.collection_cap);
      TrainOptions opt;
      opt.loss = parse_loss(loss_text);
      opt.symmetry_reduction = !no_reduction;
      opt.output_bias = output_bias;
      opt.collection_cap = config.collection_cap;
      opt.threads = config.threads();
      opt.cache = &cache;
      const auto start = std::chrono::steady_clock::now();
      const auto r = ltnn::train(data, arch, opt);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      write_text(network_out, serialize(r.network));
      json collections = json::array();
      for (const auto& layer : r.certificate.collections) {
        json l = json::array();
        for (Mask m : layer) l.push_back(hex(m));
        collections.push_back(l);
      }
      json dichotomies = json::array();
      for (Mask m : r.certificate.dichotomies) dichotomies.push_back(hex(m));
      json result = {{"optimum", json_io::to_json(r.optimum)},
                     {"total_loss", json_io::to_json(r.total_loss)},
                     {"loss", to_string(opt.loss)},
                     {"data_points", data.size()},
                     {"architecture", {{"input_dim", arch.input_dim}, {"widths", arch.widths}, {"shortcut", shortcut}}},
                     {"symmetry_reduction", opt.symmetry_reduction},
                     {"output_bias", opt.output_bias},
                     {"candidates_examined", r.candidates_examined},
                     {"distinct_fits", r.distinct_fits},
                     {"certificate", {{"dichotomies", dichotomies}, {"collections", collections}}},
                     {"network", network_out}};
      if (timing) {
        std::ostringstream t;
        t.precision(3);
        t << std::fixed << elapsed.count();
        result["wall_time_seconds"] = t.str();
      }
      const std::string text = result.dump(2) + "\n";
      if (!result_out.empty()) write_text(result_out, text);
      out << text;
      return kOk;
    }

    if (compile->parsed()) {
      const auto spec = parse_spec_text(read_text(spec_path), spec_path);
      CompileOptions opt;
      opt.validate = !no_validate;
      opt.seed = config.seed;
      const CompileMode mode = parse_compile_mode(mode_text);
      CompileReport r = [&] {
        if (mode == CompileMode::Exact || mode == CompileMode::AlmostEverywhere) {
          const auto* pwc = std::get_if<PwcSpec>(&spec);
          if (!pwc) throw InputError("mode " + mode_text + " needs a piecewise constant spec");
          return mode == CompileMode::Exact ? compile_pwc_exact(*pwc, opt) : compile_pwc_ae(*pwc, opt);
        }
        PwlSpec pwl = std::holds_alternative<PwlSpec>(spec)
                          ? std::get<PwlSpec>(spec)
                          : [&] {
                              const auto& c = std::get<PwcSpec>(spec);
                              std::vector<AffinePiece> pieces;
                              for (const auto& v : c.values) pieces.push_back({Vec(c.complex.ambient_dim()), v});
                              return PwlSpec{c.complex, pieces, false};
                            }();
        return mode == CompileMode::SltExact ? compile_pwl_slt(pwl, opt) : compile_cpwl_slt(pwl, opt);
      }();
      write_text(compile_out, serialize(r.network));
      json report = {{"mode", to_string(r.mode)},     {"size", r.size},   {"bound", r.bound},
                     {"within_bound", r.within_bound()}, {"pieces", r.pieces}, {"cells", r.cells},
                     {"network", compile_out}};
      out << report.dump(2) << '\n';
      if (r.mode == CompileMode::Exact) err << "note: volume bound 3(ep/(n+1))^(n+1) = " << r.volume_bound << '\n';
      if (!r.within_bound()) {
        err << "error: size " << r.size << " exceeds the bound " << r.bound << '\n';
        return kBoundViolated;
      }
      return kOk;
    }

    if (eval->parsed()) {
      const auto net = deserialize_network(read_text(eval_net));
      const auto points = csv::to_points(csv::read_file(points_path), points_path);
      Vec values;
      for (const auto& x : points) values.push_back(forward(net, x));
      if (values_out.empty()) {
        csv::write_values(out, points, values);
      } else {
        std::ofstream f(values_out, std::ios::binary);
        if (!f) throw InputError("cannot write " + values_out);
        csv::write_values(f, points, values);
      }
      return kOk;
    }

    if (verify->parsed()) {
      const auto net = deserialize_network(read_text(verify_net));
      const auto spec = parse_spec_text(read_text(verify_spec), verify_spec);
      const auto r = oracle::sample_equivalence(net, spec, config.sample_count, config.seed,
                                                open_cells ? oracle::SampleMode::OpenCells
                                                           : oracle::SampleMode::AllCells);
      out << mismatch_json(r, 10).dump(2) << '\n';
      return r.ok() ? kOk : kMismatch;
    }

    if (count->parsed()) {
      json result;
      if (coll_opt->count()) {
        const auto table = enumerate_collections(collections_m, config.collection_cap);
        result = {{"m", collections_m}, {"collections", table.size()}};
      } else if (points_opt->count()) {
        const auto points = csv::to_points(csv::read_file(count_points), count_points);
        const auto table = enumerate_separable_subsets(points);
        const std::size_t n = points.front().size();
        result = {{"points", points.size()},
                  {"dim", n},
                  {"separable_subsets", table.size()},
                  {"general_position_count", general_position_count(points.size(), n).get_str()},
                  {"quoted_bound", quoted_subset_bound(points.size(), n).get_str()}};
      } else {
        throw InputError("count needs a points file or --collections m");
      }
      out << result.dump(2) << '\n';
      return kOk;
    }

    if (generate->parsed()) {
      const auto net = kind == "parity" ? generate_parity(gen_n) : generate_braid(gen_n);
      const std::string text = serialize(net);
      if (generate_out.empty()) {
        out << text;
      } else {
        write_text(generate_out, text);
      }
      return kOk;
    }
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace ltnn::cli
