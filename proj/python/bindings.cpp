#include "fracseq/catalog.hpp"
#include "fracseq/gray_hilbert.hpp"
#include "fracseq/grid.hpp"
#include "fracseq/perm.hpp"
#include "fracseq/rule_file.hpp"
#include "fracseq/sequence.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace fracseq;

namespace {

int sign_of(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

std::vector<std::string> length_strings(const std::vector<Quad>& ls) {
    std::vector<std::string> out;
    out.reserve(ls.size());
    for (const auto& q : ls) out.push_back(q.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_fracseq, m) {
    m.doc() = "signed digit sequences for space-filling curves";

    py::class_<SignedPermutation>(m, "Perm")
        .def(py::init<std::vector<int>>())
        .def_static("parse", [](const std::string& s) { return parse_perm(s); })
        .def_static("named", [](const std::string& name, int n) { return named_perm(name, n); })
        .def_property_readonly("images", &SignedPermutation::images)
        .def("__call__", &SignedPermutation::operator())
        .def("apply", &SignedPermutation::apply)
        .def("__mul__", [](const SignedPermutation& a, const SignedPermutation& b) { return compose(a, b); })
        .def("inverse", [](const SignedPermutation& p) { return invert(p); })
        .def("__pow__", [](const SignedPermutation& p, long long e) { return power(p, e); })
        .def("parity", [](const SignedPermutation& p) { return parity(p); })
        .def("matrix", [](const SignedPermutation& p) { return to_matrix(p); })
        .def(py::self == py::self)
        .def("__hash__", [](const SignedPermutation& p) { return py::hash(py::tuple(py::cast(p.images()))); })
        .def("__repr__", &SignedPermutation::to_string);

    m.def("group", [](const std::vector<SignedPermutation>& gens) { return generate_group(gens); });

    m.def("reverse", [](const Digits& s) { return reverse(SignedSequence(s)).items(); });
    m.def("negate", [](const Digits& s) { return negate(SignedSequence(s)).items(); });
    m.def("inverse", [](const Digits& s) { return inverse(SignedSequence(s)).items(); });
    m.def("normalize", [](const Digits& s) { return normalize(SignedSequence(s)).items(); });
    m.def("minimal", [](const Digits& s) { return minimal_normalized(SignedSequence(s)).items(); });
    m.def("is_normalized", [](const Digits& s) { return is_normalized(s); });
    m.def("characteristic_perm", [](const Digits& s) { return characteristic_perm(s).perm; });
    m.def("compare", [](const Digits& a, const Digits& b) { return sign_of(compare(a, b)); });
    m.def("fold", [](const std::vector<int>& xs) { return fold(xs).items(); });
    m.def("parse", [](const std::string& s) { return parse_digits(s); });
    m.def("format", &format_digits);

    m.def("gray", &gray_sequence, py::arg("d"));
    m.def("is_hyper_orthogonal", &is_hyper_orthogonal, py::arg("s"), py::arg("order"));

    m.def("ids", [] {
        std::vector<std::string> ids;
        for (const auto& e : catalog_list()) ids.push_back(e.id);
        return ids;
    });
    m.def("title", [](const std::string& id) { return find_entry(id).title; });
    m.def("gen", [](const std::string& id, std::size_t n) { return generate_entry(id, n).digits; },
          py::arg("id"), py::arg("n"));
    m.def("gen_lengths", [](const std::string& id, std::size_t n) { return length_strings(generate_entry(id, n).lengths); },
          py::arg("id"), py::arg("n"));
    m.def("level", [](const std::string& id, int k) { return generate_level(id, k).digits; }, py::arg("id"),
          py::arg("k"));
    m.def("verify", [](const std::string& id) {
        VerificationReport r = verify_entry(id);
        py::list checks;
        for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
        return py::make_tuple(r.ok(), checks);
    });
    m.def("bfile", [](const std::string& id, std::size_t n) { return export_bfile(id, n); });

    m.def("trace", [](const std::string& id, int k) {
        Polyline p = draw_level(id, k);
        std::vector<std::vector<double>> out;
        for (const auto& v : p.vertices) out.push_back(to_doubles(v));
        return out;
    });
    m.def("svg", [](const std::string& id, int k) { return svg_export(draw_level(id, k)); });

    m.def("rule_gen", [](const std::filesystem::path& path, int k) { return load_rule_file(path).iterate(k); });
    m.def("rule_text_gen", [](const std::string& text, int k) { return parse_rule_text(text).iterate(k); });

    py::register_exception<RuleError>(m, "RuleError", PyExc_ValueError);
}
