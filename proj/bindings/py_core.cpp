#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <gmpxx.h>

#include <sstream>

#include "subrank/bounds.hpp"
#include "subrank/cw.hpp"
#include "subrank/gf2.hpp"
#include "subrank/hypergraph.hpp"
#include "subrank/io.hpp"
#include "subrank/spectral.hpp"
#include "subrank/version.hpp"

namespace py = pybind11;
using namespace subrank;

namespace {

// GMP integers cross the boundary as Python ints via decimal strings.
py::int_ to_py(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

gf2::Subspace subspace_from_rows(int n, const std::vector<std::string>& rows) {
  std::vector<BitVec> vecs;
  vecs.reserve(rows.size());
  for (const std::string& r : rows) vecs.push_back(BitVec::from_string(r));
  return gf2::Subspace::span(n, vecs);
}

std::vector<std::string> subspace_rows(const gf2::Subspace& v) {
  std::vector<std::string> rows;
  for (const BitVec& b : v.basis()) rows.push_back(b.to_string());
  return rows;
}

hg::KGraph graph_from_parts(int order, const std::vector<int>& sizes,
                            const std::vector<hg::Edge>& edges) {
  return hg::KGraph::make(order, sizes, edges);
}

py::dict certificate_dict(const bounds::RankCertificate& c) {
  py::dict d;
  d["k"] = c.k;
  d["r"] = c.r;
  d["method"] = bounds::method_name(c.method);
  d["decision"] = bounds::decision_name(c.decision);
  d["verified"] = c.verified;
  if (c.s) d["s"] = *c.s;
  d["elapsed_ms"] = c.elapsed_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = subrank::kVersion;
  m.attr("git_sha") = subrank::kGitSha;

  py::class_<gf2::Subspace>(m, "Subspace")
      .def(py::init([](int n, const std::vector<std::string>& rows) {
             return subspace_from_rows(n, rows);
           }),
           py::arg("n"), py::arg("rows") = std::vector<std::string>{})
      .def_property_readonly("ambient", &gf2::Subspace::ambient)
      .def_property_readonly("dim", &gf2::Subspace::dim)
      .def_property_readonly("basis", &subspace_rows)
      .def("contains", [](const gf2::Subspace& v, const std::string& row) {
        return v.contains(BitVec::from_string(row));
      })
      .def("orthogonal_complement", &gf2::Subspace::orthogonal_complement)
      .def("__eq__", [](const gf2::Subspace& a, const gf2::Subspace& b) { return a == b; })
      .def("__repr__", [](const gf2::Subspace& v) {
        std::ostringstream os;
        os << "Subspace(n=" << v.ambient() << ", dim=" << v.dim() << ")";
        return os.str();
      });

  m.def("weight_distribution", [](const gf2::Subspace& v) {
    py::list out;
    for (const mpz_class& c : gf2::subspace_weights(v).counts) out.append(to_py(c));
    return out;
  });
  m.def("restricted_pair_count",
        [](long k, const gf2::Subspace& v) { return to_py(gf2::restricted_pair_count(k, v)); });
  m.def("unrestricted_pair_count",
        [](long k, const gf2::Subspace& v) { return to_py(gf2::unrestricted_pair_count(k, v)); });

  py::class_<hg::KGraph>(m, "KGraph")
      .def(py::init(&graph_from_parts), py::arg("order"), py::arg("sizes"), py::arg("edges"))
      .def_readonly("order", &hg::KGraph::order)
      .def_readonly("sizes", &hg::KGraph::sizes)
      .def_readonly("edges", &hg::KGraph::edges)
      .def("__repr__", [](const hg::KGraph& g) {
        std::ostringstream os;
        os << "KGraph(order=" << g.order << ", edges=" << g.edge_count() << ")";
        return os.str();
      });

  m.def("type_graph", [](const std::vector<int>& parts) { return hg::type_graph({parts}); });
  m.def("kronecker", &hg::kronecker);
  m.def("kronecker_power", &hg::kronecker_power);
  m.def("is_induced_matching", &hg::is_induced_matching);
  m.def(
      "subrank",
      [](const hg::KGraph& g, uint64_t budget) {
        hg::SubrankResult r = hg::subrank(g, budget);
        py::dict d;
        d["value"] = r.value;
        d["witness"] = r.witness;
        d["exact"] = r.exact;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("graph"), py::arg("budget") = hg::kDefaultSearchBudget);
  m.def(
      "subrank_power_rate",
      [](const hg::KGraph& g, int power, uint64_t budget) {
        hg::PowerRateResult r = hg::subrank_power_rate(g, power, budget);
        py::dict d;
        d["value"] = r.result.value;
        d["rate"] = r.rate;
        d["exact"] = r.result.exact;
        return d;
      },
      py::arg("graph"), py::arg("power"), py::arg("budget") = hg::kDefaultSearchBudget);

  m.def("binomial", [](long n, long k) { return to_py(bounds::binomial(n, k)); });
  m.def("f_km", [](long k, long m) { return to_py(bounds::f_km(k, m)); });
  m.def("check_f_properties", &bounds::check_f_properties);
  m.def("ukrs_lhs", [](long k, long r, long s) { return to_py(bounds::ukrs_lhs(k, r, s)); });
  m.def("greedy_weight_bound",
        [](long k, long r) { return to_py(bounds::greedy_weight_bound(k, r)); });
  m.def(
      "verify_rank_inequality",
      [](long k, long r) { return certificate_dict(bounds::verify_rank_inequality(k, r)); },
      py::arg("k"), py::arg("r"));
  m.def(
      "certify_main_bound",
      [](long k) {
        bounds::MainBoundCertificate c = bounds::certify_main_bound(k);
        py::dict d;
        d["k"] = c.k;
        d["certified"] = c.certified;
        d["failed_r"] = c.failed_r;
        return d;
      },
      py::arg("k"));
  m.def(
      "scan_conjecture",
      [](long k_max, int jobs) {
        bounds::ScanOptions opt;
        opt.k_max = k_max;
        opt.jobs = jobs;
        bounds::ScanReport rep = bounds::scan_conjecture(opt);
        py::list rows;
        for (const auto& c : rep.certificates) rows.append(certificate_dict(c));
        py::dict d;
        d["rows"] = rows;
        d["failures"] = rep.failures;
        d["elapsed_s"] = rep.elapsed_s;
        return d;
      },
      py::arg("k_max"), py::arg("jobs") = 1);

  m.def("krawchouk", [](long n, long k, long t) { return to_py(spectral::krawchouk(n, k, t)); });
  m.def("middle_krawchouk_closed",
        [](long n, long t) { return to_py(spectral::middle_krawchouk_closed(n, t)); });
  m.def("pair_count_fourier",
        [](long n, const gf2::Subspace& v) { return to_py(spectral::pair_count_fourier(n, v)); });
  m.def("kkl_subspace_check", [](const gf2::Subspace& v) {
    return spectral::kkl_subspace_check(v).all_hold;
  });
  m.def("sumratio_check", [](long k, long s) { return spectral::sumratio_check(k, s).holds; });
  m.def("robbins_check", [](long n) { return spectral::robbins_check(n); });
  m.def("lemma2_instance_check",
        [](long n, long c) { return spectral::lemma2_instance_check(n, c); });

  m.def("alpha_for_type_graph", [](const std::vector<int>& parts) {
    return cw::alpha_for_type_graph({parts}).maps;
  });
  m.def("check_tightness", [](const hg::KGraph& g, const std::vector<std::vector<long long>>& maps) {
    cw::AlphaMaps alpha;
    alpha.maps = maps;
    return cw::check_tightness(g, alpha);
  });
  m.def("cw3_lower_bound",
        [](const hg::KGraph& g, const std::vector<std::vector<long long>>& maps) {
          cw::AlphaMaps alpha;
          alpha.maps = maps;
          cw::Cw3Result r = cw::cw3_lower_bound(g, alpha);
          py::dict d;
          d["bits"] = r.value.bits;
          d["distribution"] = r.distribution;
          return d;
        });
  m.def("conjectured_value",
        [](const std::vector<int>& parts) { return cw::conjectured_value({parts}).bits; });
}
