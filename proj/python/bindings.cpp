#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ltnn/compiler.hpp"
#include "ltnn/erm.hpp"
#include "ltnn/errors.hpp"
#include "ltnn/json_io.hpp"
#include "ltnn/network.hpp"
#include "ltnn/oracle.hpp"
#include "ltnn/separability.hpp"
#include "ltnn/spec_io.hpp"

namespace py = pybind11;
using namespace ltnn;

namespace {

// Rationals cross the boundary as strings; the Python layer turns them into Fractions.
Vec parse_vec(const std::vector<std::string>& xs) {
  Vec v;
  for (const auto& s : xs) v.push_back(parse_rational(s));
  return v;
}

std::vector<Vec> parse_points(const std::vector<std::vector<std::string>>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) out.push_back(parse_vec(p));
  return out;
}

py::dict report_dict(const CompileReport& r) {
  py::dict d;
  d["mode"] = to_string(r.mode);
  d["size"] = r.size;
  d["bound"] = r.bound;
  d["within_bound"] = r.within_bound();
  d["pieces"] = r.pieces;
  d["cells"] = r.cells;
  d["network"] = serialize(r.network);
  return d;
}

py::dict py_compile(const std::string& spec_text, const std::string& mode_text, bool validate) {
  const auto spec = parse_spec_text(spec_text);
  CompileOptions opt;
  opt.validate = validate;
  const auto mode = parse_compile_mode(mode_text);
  switch (mode) {
    case CompileMode::Exact:
    case CompileMode::AlmostEverywhere: {
      const auto* pwc = std::get_if<PwcSpec>(&spec);
      if (!pwc) throw InputError("mode " + mode_text + " needs a piecewise constant spec");
      return report_dict(mode == CompileMode::Exact ? compile_pwc_exact(*pwc, opt) : compile_pwc_ae(*pwc, opt));
    }
    case CompileMode::SltExact:
    case CompileMode::SltCpwl: {
      const auto* pwl = std::get_if<PwlSpec>(&spec);
      if (!pwl) throw InputError("mode " + mode_text + " needs a piecewise linear spec");
      return report_dict(mode == CompileMode::SltExact ? compile_pwl_slt(*pwl, opt) : compile_cpwl_slt(*pwl, opt));
    }
    default:
      throw InputError("use generate() for " + mode_text);
  }
}

py::dict py_train(const std::vector<std::vector<std::string>>& points, const std::vector<std::string>& labels,
               const std::vector<std::size_t>& widths, bool shortcut, const std::string& loss, bool symmetry_reduction,
               bool output_bias, std::size_t threads) {
  Dataset data{parse_points(points), parse_vec(labels)};
  TrainOptions opt;
  opt.loss = parse_loss(loss);
  opt.symmetry_reduction = symmetry_reduction;
  opt.output_bias = output_bias;
  opt.threads = threads;
  TrainResult r;
  {
    py::gil_scoped_release release;
    r = ltnn::train(data, {data.dim(), widths, shortcut}, opt);
  }
  py::dict d;
  d["optimum"] = to_string(r.optimum);
  d["total_loss"] = to_string(r.total_loss);
  d["candidates_examined"] = r.candidates_examined;
  d["distinct_fits"] = r.distinct_fits;
  d["dichotomies"] = r.certificate.dichotomies;
  d["collections"] = r.certificate.collections;
  d["network"] = serialize(r.network);
  return d;
}

std::vector<std::string> py_evaluate(const std::string& network_text, const std::vector<std::vector<std::string>>& points) {
  const auto net = deserialize_network(network_text);
  std::vector<std::string> out;
  for (const auto& x : parse_points(points)) out.push_back(to_string(forward(net, x)));
  return out;
}

py::dict py_verify(const std::string& network_text, const std::string& spec_text, std::size_t samples,
                std::uint64_t seed, bool open_cells) {
  const auto net = deserialize_network(network_text);
  const auto spec = parse_spec_text(spec_text);
  const auto r = oracle::sample_equivalence(net, spec, samples, seed,
                                            open_cells ? oracle::SampleMode::OpenCells : oracle::SampleMode::AllCells);
  py::dict d;
  d["total_samples"] = r.total_samples;
  d["mismatches"] = r.mismatches.size();
  d["ok"] = r.ok();
  return d;
}

}  // namespace

PYBIND11_MODULE(_ltnn, m) {
  m.doc() = "Exact threshold-network compiler and global ERM";
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<RefusalError> refusal_error(m, "RefusalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const RefusalError& e) {
      py::set_error(refusal_error, e.what());
    }
  });

  m.def("compile", &py_compile, py::arg("spec"), py::arg("mode") = "exact", py::arg("validate") = true);
  m.def("train", &py_train, py::arg("points"), py::arg("labels"), py::arg("widths"), py::arg("shortcut") = false,
        py::arg("loss") = "abs", py::arg("symmetry_reduction") = true, py::arg("output_bias") = false,
        py::arg("threads") = 1);
  m.def("evaluate", &py_evaluate, py::arg("network"), py::arg("points"));
  m.def("verify", &py_verify, py::arg("network"), py::arg("spec"), py::arg("samples") = 10000, py::arg("seed") = 0,
        py::arg("open_cells") = false);
  m.def("count_separable", [](const std::vector<std::vector<std::string>>& points) {
    return enumerate_separable_subsets(parse_points(points)).size();
  });
  m.def(
      "count_collections", [](std::size_t m, std::size_t cap) { return enumerate_collections(m, cap).size(); },
      py::arg("m"), py::arg("cap") = 4);
  m.def("generate", [](const std::string& kind, std::size_t n) {
    if (kind == "parity") return serialize(generate_parity(n));
    if (kind == "braid") return serialize(generate_braid(n));
    throw InputError("unknown generator " + kind);
  });
  m.attr("__version__") = "0.1.0";
}
