#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "wiresafe/audit.hpp"
#include "wiresafe/bench.hpp"
#include "wiresafe/serialize.hpp"

namespace py = pybind11;
using namespace wiresafe;

namespace {

using Rows = std::vector<std::vector<Word>>;

ExtVector to_vector(const FieldSpec& f, const std::vector<Word>& v) { return ExtVector(f, v); }

std::vector<Word> from_vector(const ExtVector& v) { return {v.values().begin(), v.values().end()}; }

Rows from_matrix(const ExtMatrix& m) {
  Rows out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

std::vector<std::vector<int>> from_base(const BaseMatrix& b) {
  std::vector<std::vector<int>> out(b.rows(), std::vector<int>(b.cols()));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out[r][c] = b.get(r, c) ? 1 : 0;
  return out;
}

ExtMatrix to_matrix(const FieldSpec& f, const Rows& rows, std::size_t cols) {
  if (rows.empty()) return ExtMatrix(f, 0, cols);
  return ExtMatrix::from_rows(f, rows);
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_wiresafe, m) {
  m.doc() = "Gabidulin coset coding for secure network coding, with exact secrecy audits";

  // Translators registered later are tried first, so the base class goes first.
  auto base = py::register_exception<Error>(m, "WiresafeError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());

  py::class_<FieldSpec>(m, "Field")
      .def(py::init<int, Word>(), py::arg("m"), py::arg("modulus"))
      .def_static("standard", &FieldSpec::standard, py::arg("m"))
      .def_property_readonly("m", &FieldSpec::m)
      .def_property_readonly("modulus", &FieldSpec::modulus)
      .def_property_readonly("order", &FieldSpec::order)
      .def_property_readonly("alpha", &FieldSpec::alpha)
      .def("add", &FieldSpec::add)
      .def("mul", &FieldSpec::mul)
      .def("inv", &FieldSpec::inv)
      .def("pow", &FieldSpec::pow)
      .def("frobenius", &FieldSpec::frobenius, py::arg("a"), py::arg("i") = 1)
      .def("__eq__", [](const FieldSpec& a, const FieldSpec& b) { return a == b; })
      .def("__repr__", [](const FieldSpec& f) { return "Field(m=" + std::to_string(f.m()) + ", modulus=0x" + to_hex(f.modulus()) + ")"; });

  m.def("is_irreducible", &is_irreducible, py::arg("poly"));
  m.def("rank_over_base", [](const FieldSpec& f, const std::vector<Word>& v) { return rank_base(to_vector(f, v)); },
        py::arg("field"), py::arg("vector"));
  m.def("rank_distance",
        [](const FieldSpec& f, const std::vector<Word>& x, const std::vector<Word>& y) {
          return rank_distance(to_vector(f, x), to_vector(f, y));
        },
        py::arg("field"), py::arg("x"), py::arg("y"));
  m.def("count_full_rank", &count_full_rank, py::arg("rows"), py::arg("cols"));

  py::class_<GabidulinCode>(m, "GabidulinCode")
      .def_property_readonly("field", &GabidulinCode::spec)
      .def_property_readonly("n", &GabidulinCode::n)
      .def_property_readonly("k", &GabidulinCode::k)
      .def_property_readonly("dimension", &GabidulinCode::dimension)
      .def_property_readonly("designed_distance", &GabidulinCode::designed_distance)
      .def_property_readonly("generators", [](const GabidulinCode& c) { return from_vector(c.generators()); })
      .def_property_readonly("parity_check", [](const GabidulinCode& c) { return from_matrix(c.parity_check()); })
      .def("min_rank_distance", [](const GabidulinCode& c) { return min_rank_distance_bruteforce(c); })
      .def("is_mrd", [](const GabidulinCode& c) { return verify_mrd_condition(c); })
      .def("to_json", [](const GabidulinCode& c) { return to_python(scheme_to_json(c)); });

  m.def("build_gabidulin",
        [](const FieldSpec& f, std::size_t n, std::size_t k, std::optional<std::vector<Word>> gens) {
          return build_gabidulin(f, n, k, std::move(gens));
        },
        py::arg("field"), py::arg("n"), py::arg("k"), py::arg("generators") = py::none());

  m.def("min_rank_distance",
        [](const FieldSpec& f, const Rows& h, std::size_t n) { return min_rank_distance_bruteforce(to_matrix(f, h, n)); },
        py::arg("field"), py::arg("parity_check"), py::arg("n"));
  m.def("verify_mrd_condition",
        [](const FieldSpec& f, const Rows& h, std::size_t n) { return verify_mrd_condition(to_matrix(f, h, n)); },
        py::arg("field"), py::arg("parity_check"), py::arg("n"));
  m.def("check_stack_nonsingular",
        [](const FieldSpec& f, const Rows& h, const std::vector<std::vector<int>>& b) {
          const BaseMatrix bm = BaseMatrix::from_rows(b);
          return check_stack_condition(to_matrix(f, h, bm.cols()), bm);
        },
        py::arg("field"), py::arg("parity_check"), py::arg("b"));

  py::class_<CosetScheme>(m, "CosetScheme")
      .def(py::init<GabidulinCode>(), py::arg("code"))
      .def_static("from_parity_check",
                  [](const FieldSpec& f, const Rows& h, std::size_t n) {
                    return CosetScheme::from_parity_check(to_matrix(f, h, n));
                  },
                  py::arg("field"), py::arg("parity_check"), py::arg("n"))
      .def_static("mds_baseline",
                  [](const FieldSpec& f, std::size_t n, std::size_t mu) { return build_mds_baseline(f, n, mu); },
                  py::arg("field"), py::arg("n"), py::arg("mu"))
      .def_static("cleartext", &cleartext_scheme, py::arg("field"), py::arg("n"), py::arg("k"))
      .def_property_readonly("field", &CosetScheme::spec)
      .def_property_readonly("n", &CosetScheme::n)
      .def_property_readonly("k", &CosetScheme::k)
      .def_property_readonly("mu", &CosetScheme::mu)
      .def_property_readonly("parity_check", [](const CosetScheme& s) { return from_matrix(s.parity_check()); })
      .def("encode",
           [](const CosetScheme& s, const std::vector<Word>& msg, std::uint64_t seed) {
             Rng rng(seed);
             return from_vector(s.encode(to_vector(s.spec(), msg), rng));
           },
           py::arg("message"), py::arg("seed"))
      .def("encode_with",
           [](const CosetScheme& s, const std::vector<Word>& msg, const std::vector<Word>& randomness) {
             return from_vector(s.encode_with(to_vector(s.spec(), msg), to_vector(s.spec(), randomness)));
           },
           py::arg("message"), py::arg("randomness"))
      .def("decode",
           [](const CosetScheme& s, const std::vector<Word>& x) { return from_vector(s.decode(to_vector(s.spec(), x))); },
           py::arg("codeword"))
      .def("secrecy",
           [](const CosetScheme& s, const std::vector<std::vector<int>>& b) {
             const BaseMatrix bm = b.empty() ? BaseMatrix(0, s.n()) : BaseMatrix::from_rows(b);
             return to_python(entry_to_json(exhaustive_secrecy(s, bm)));
           },
           py::arg("b"))
      .def("audit_full_rank",
           [](const CosetScheme& s, std::optional<std::size_t> mu) {
             return to_python(report_to_json(audit_full_rank(s, mu.value_or(s.mu()))));
           },
           py::arg("mu") = py::none());

  py::class_<Network>(m, "Network")
      .def_static("builtin", &builtin_network, py::arg("name"))
      .def_static("from_json", [](const std::string& text) { return network_from_json(Json::parse(text)); }, py::arg("text"))
      .def_property_readonly("nodes", &Network::nodes)
      .def_property_readonly("edge_ids",
                             [](const Network& n) {
                               std::vector<int> ids;
                               for (const auto& e : n.edges()) ids.push_back(e.id);
                               return ids;
                             })
      .def("mincut", [](const Network& n) { return mincut(n); })
      .def("to_json", [](const Network& n) { return to_python(network_to_json(n)); });

  py::class_<LinearNetworkCode>(m, "NetworkCode")
      .def_static("random", &assign_random_code, py::arg("network"), py::arg("n"), py::arg("seed"))
      .def_property_readonly("n", &LinearNetworkCode::n)
      .def_property_readonly("network", &LinearNetworkCode::network)
      .def("is_feasible", [](const LinearNetworkCode& c) { return is_feasible(c); })
      .def("global_vector", &LinearNetworkCode::global, py::arg("edge_position"))
      .def("transmit",
           [](const LinearNetworkCode& c, const FieldSpec& f, const std::vector<Word>& x) {
             std::vector<std::vector<Word>> out;
             for (const auto& y : transmit(c, to_vector(f, x)).received) out.push_back(from_vector(y));
             return out;
           },
           py::arg("field"), py::arg("x"))
      .def("sink_decode",
           [](const LinearNetworkCode& c, const FieldSpec& f, std::size_t sink_position, const std::vector<Word>& y) {
             return from_vector(sink_decode(c, c.network().sinks().at(sink_position), to_vector(f, y)));
           },
           py::arg("field"), py::arg("sink_position"), py::arg("received"))
      .def("wiretap_matrix",
           [](const LinearNetworkCode& c, const std::vector<int>& ids) { return from_base(wiretap_matrix(c, ids)); },
           py::arg("edge_ids"))
      .def("audit",
           [](const LinearNetworkCode& c, const CosetScheme& s, std::optional<std::size_t> mu) {
             return to_python(report_to_json(audit_network(c, s, mu.value_or(s.mu()))));
           },
           py::arg("scheme"), py::arg("mu") = py::none());

  m.def("fit_linear",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          const auto f = fit_linear(x, y);
          return py::dict(py::arg("slope") = f.slope, py::arg("intercept") = f.intercept, py::arg("r2") = f.r2);
        },
        py::arg("x"), py::arg("y"));

  m.def("run_cli",
        [](const std::vector<std::string>& args, const std::string& input) {
          std::istringstream in(input);
          std::ostringstream out, err;
          const int code = run_cli(args, in, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "",
        "Runs the command line; returns (exit_code, stdout, stderr).");
}
