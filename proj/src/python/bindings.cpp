#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dwork/criteria.hpp"
#include "dwork/jacobi.hpp"
#include "dwork/monodromy.hpp"
#include "dwork/report.hpp"
#include "dwork/search.hpp"

namespace py = pybind11;
using namespace dwork;

namespace {

std::string rational_str(const Rational& q) { return q.get_str(); }

std::vector<std::string> cyc_coeffs(const CycNum& x) {
    std::vector<std::string> out;
    for (const auto& c : x.coeffs()) out.push_back(rational_str(c));
    return out;
}

std::optional<UnitSubgroup> subgroup(int d, const std::optional<std::vector<int>>& gens) {
    if (!gens) return std::nullopt;
    std::vector<int> g;
    for (int x : *gens) g.push_back(bracket(x, d));
    return UnitSubgroup::generated_by(d, g);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hypergeometric parameter criteria, monodromy and Jacobi sum checks";
    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<SearchSpecError>(m, "SearchSpecError", PyExc_ValueError);

    m.def("normalize", [](const std::string& lit) { return HgParam::parse(lit).to_string(); }, py::arg("param"));
    m.def("validate",
          [](int d, std::vector<long long> a, std::vector<long long> b, std::optional<std::array<long long, 3>> c) {
              return HgParam::validate(d, std::move(a), std::move(b), c).to_string();
          },
          py::arg("d"), py::arg("alpha"), py::arg("beta"), py::arg("c") = std::nullopt);
    m.def("scale", [](const std::string& lit, int s) { return scale(HgParam::parse(lit), s).to_string(); },
          py::arg("param"), py::arg("s"));
    m.def("canonical_form", [](const std::string& lit) { return canonical_form(HgParam::parse(lit)).to_string(); },
          py::arg("param"));
    m.def("hodge_degrees", [](const std::string& lit) { return hodge_degrees(HgParam::parse(lit)).degrees; },
          py::arg("param"));
    m.def("is_regular", [](const std::string& lit) { return is_regular(HgParam::parse(lit)); }, py::arg("param"));
    m.def("zigzag_regular", [](const std::string& lit) { return zigzag_regular(HgParam::parse(lit)); },
          py::arg("param"));
    m.def("jordan_blocks", [](const std::string& lit) { return jordan_blocks(HgParam::parse(lit)); },
          py::arg("param"));
    m.def("bm",
          [](const std::string& lit, const std::string& profile) {
              const auto r = bm(HgParam::parse(lit), profile_from_name(profile).bm);
              return py::make_tuple(r.pass, r.failed_bullet);
          },
          py::arg("param"), py::arg("profile") = "strict");
    m.def("det_condition",
          [](const std::string& lit, CTriple c, const std::string& profile) {
              return det_condition(HgParam::parse(lit), c, profile_from_name(profile).coprime_scope);
          },
          py::arg("param"), py::arg("c"), py::arg("profile") = "strict");
    m.def("find_c",
          [](const std::string& lit, const std::string& profile) {
              return find_c(HgParam::parse(lit), profile_from_name(profile).coprime_scope);
          },
          py::arg("param"), py::arg("profile") = "strict");
    m.def("report_json",
          [](const std::string& lit, const std::string& profile, std::optional<std::vector<int>> u) {
              const auto p = HgParam::parse(lit);
              return to_json(full_report(p, profile_from_name(profile), subgroup(p.d(), u))).dump();
          },
          py::arg("param"), py::arg("profile") = "strict", py::arg("U") = std::nullopt);

    m.def("monodromy",
          [](const std::string& lit) {
              const auto r = monodromy_report(HgParam::parse(lit));
              py::dict out;
              out["rank"] = r.pseudo_rank;
              out["det"] = cyc_coeffs(r.pseudo_det);
              out["expected_det"] = r.expected_det;
              out["infinity_blocks"] = r.infinity_blocks;
              out["expected_blocks"] = r.expected_blocks;
              out["pass"] = r.pass();
              return out;
          },
          py::arg("param"));
    m.def("verify_annihilation",
          [](const std::string& lit, int j, int order) { return verify_annihilation(HgParam::parse(lit), j, order).pass; },
          py::arg("param"), py::arg("j"), py::arg("order") = 30);

    m.def("jacobi",
          [](long ell, int d, std::vector<int> a, std::optional<long> g) {
              return cyc_coeffs(jacobi(PrimeFieldCtx(ell, d, g), a));
          },
          py::arg("ell"), py::arg("d"), py::arg("a"), py::arg("generator") = std::nullopt);
    m.def("hodge_newton",
          [](const std::string& lit, long ell, int precision) {
              const auto r = hodge_newton_check(HgParam::parse(lit), ell, precision);
              py::dict out;
              out["match"] = r.match;
              out["valuations"] = r.valuations;
              out["hodge"] = r.hodge;
              out["offsets"] = r.offsets;
              return out;
          },
          py::arg("param"), py::arg("ell"), py::arg("precision") = 40);

    m.def("search_json",
          [](std::vector<int> partition, int d_min, int d_max, const std::string& profile, bool witness, bool dedup,
             int jobs, std::optional<std::size_t> limit) {
              SearchSpec s;
              s.partition = std::move(partition);
              for (int x : s.partition) s.n += x;
              s.d_min = d_min;
              s.d_max = d_max;
              s.options = profile_from_name(profile);
              s.witness = witness;
              s.dedup_by_scaling = dedup;
              s.jobs = jobs;
              s.limit = limit;
              SearchOutcome out;
              {
                  py::gil_scoped_release release;
                  out = run_search(s);
              }
              nlohmann::ordered_json j = nlohmann::ordered_json::array();
              for (const auto& r : out.results) j.push_back(to_json(r));
              return j.dump();
          },
          py::arg("partition"), py::arg("d_min") = 3, py::arg("d_max") = 30, py::arg("profile") = "strict",
          py::arg("witness") = false, py::arg("dedup") = false, py::arg("jobs") = 1, py::arg("limit") = std::nullopt);
}
