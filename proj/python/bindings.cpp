#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chexpm/bench.hpp"
#include "chexpm/expm.hpp"
#include "chexpm/simplex.hpp"
#include "chexpm/spin.hpp"

namespace py = pybind11;
using namespace chexpm;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix matrix_from_array(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw InvalidInputError("expected a square 2-D array");
    const int n = static_cast<int>(a.shape(0));
    ComplexMatrix m(n);
    auto r = a.unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = r(i, j);
    return m;
}

py::array_t<std::complex<double>> array_from_matrix(const ComplexMatrix& m) {
    py::array_t<std::complex<double>> out({m.n(), m.n()});
    auto w = out.mutable_unchecked<2>();
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) w(i, j) = m(i, j);
    return out;
}

py::array_t<std::complex<double>> array_from_vector(const std::vector<Complex>& v) {
    py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
    auto w = out.mutable_unchecked<1>();
    for (size_t k = 0; k < v.size(); ++k) w(static_cast<py::ssize_t>(k)) = v[k];
    return out;
}

std::vector<Complex> vector_from_array(const ComplexArray& a) {
    if (a.ndim() != 1) throw InvalidInputError("expected a 1-D array");
    auto r = a.unchecked<1>();
    std::vector<Complex> out(static_cast<size_t>(a.shape(0)));
    for (py::ssize_t k = 0; k < a.shape(0); ++k) out[static_cast<size_t>(k)] = r(k);
    return out;
}

int two_j_from(double j) {
    const double two_j = 2.0 * j;
    if (two_j < 0 || std::abs(two_j - std::llround(two_j)) > 1e-9)
        throw InvalidInputError("j must be a nonnegative integer or half-integer");
    return static_cast<int>(std::llround(two_j));
}

HermitianTraceless hermitian_from_array(const ComplexArray& a) {
    return HermitianTraceless(matrix_from_array(a));
}

py::dict angles_dict(const AngleParams& p) {
    py::dict d;
    d["n"] = p.n;
    d["r"] = p.r;
    d["angles"] = p.angles;
    d["gimbal"] = p.gimbal;
    return d;
}

AngleParams angles_from(int n, double r, const std::vector<double>& angles) {
    AngleParams p;
    p.n = n;
    p.r = r;
    p.angles = angles;
    return p;
}

}  // namespace

PYBIND11_MODULE(_chexpm, m) {
    m.doc() = "Matrix exponentials as Cayley-Hamilton polynomials, trace-invariant "
              "calculus, and the simplex geometry of traceless hermitian spectra";

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<UnsupportedOrderError>(m, "UnsupportedOrderError", PyExc_ValueError);
    py::register_exception<InconsistentInvariantsError>(m, "InconsistentInvariantsError",
                                                        PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<DegenerateSpectrumError>(m, "DegenerateSpectrumError",
                                                    PyExc_ArithmeticError);
    py::register_exception<PoleProximityError>(m, "PoleProximityError", PyExc_ArithmeticError);

    // matrix_core
    m.def("trace_powers",
          [](const ComplexArray& a, int pmax) {
              return array_from_vector(trace_powers(matrix_from_array(a), pmax));
          },
          py::arg("m"), py::arg("pmax"), "tr(M^p) for p = 1..pmax");
    m.def("determinant",
          [](const ComplexArray& a) {
              return py::cast(determinant(matrix_from_array(a)));
          },
          py::arg("m"));

    // spectra
    m.def("eig_hermitian",
          [](const ComplexArray& a) {
              return array_from_vector(eig_hermitian(hermitian_from_array(a)).values);
          },
          py::arg("h"), "eigenvalues of a traceless hermitian matrix, descending");
    m.def("char_roots_general",
          [](const ComplexArray& a) {
              return array_from_vector(char_roots_general(matrix_from_array(a)).values);
          },
          py::arg("m"), "characteristic-polynomial roots via trace invariants");

    // invariants
    m.def("sym_from_traces",
          [](const ComplexArray& power_sums, int n) {
              return array_from_vector(sym_from_traces(vector_from_array(power_sums), n).s);
          },
          py::arg("power_sums"), py::arg("n"), "S_0..S_n from the power sums");
    m.def("sym_from_spectrum",
          [](const ComplexArray& values) {
              return array_from_vector(
                  sym_from_spectrum(make_spectrum(vector_from_array(values))).s);
          },
          py::arg("values"));
    m.def("explicit_low_invariants",
          [](const ComplexArray& power_sums, int order) {
              return py::cast(explicit_low_invariants(vector_from_array(power_sums), order));
          },
          py::arg("power_sums"), py::arg("order"));
    m.def("charpoly_coeffs",
          [](const ComplexArray& power_sums, int n) {
              return array_from_vector(
                  charpoly_coeffs(sym_from_traces(vector_from_array(power_sums), n)));
          },
          py::arg("power_sums"), py::arg("n"),
          "monic characteristic polynomial, descending powers");

    // response
    m.def("response_derivs",
          [](const ComplexArray& values, double t, int pmax) {
              return array_from_vector(
                  response_derivs(make_spectrum(vector_from_array(values)), t, pmax).derivs);
          },
          py::arg("values"), py::arg("t"), py::arg("pmax"),
          "(-i d/dt)^p F(t) for p = 0..pmax over the given spectrum");
    m.def("spin_response",
          [](double j, double theta) { return py::cast(spin_response(two_j_from(j), theta)); },
          py::arg("j"), py::arg("theta"));
    m.def("response_contour_oracle",
          [](const ComplexArray& values, double t, std::optional<double> radius, int npoints) {
              const Spectrum s = make_spectrum(vector_from_array(values));
              return py::cast(response_contour_oracle(
                  s, t, radius ? *radius : default_contour_radius(s), npoints));
          },
          py::arg("values"), py::arg("t"), py::arg("radius") = std::nullopt,
          py::arg("npoints") = 512);

    // expm
    m.def("expm_ch",
          [](const ComplexArray& a, double t) {
              return array_from_matrix(expm_ch(matrix_from_array(a), t));
          },
          py::arg("m"), py::arg("t") = 1.0,
          "exp(itM) assembled as an order-(N-1) matrix polynomial");
    m.def("expm_oracle",
          [](const ComplexArray& a, double t) {
              return array_from_matrix(expm_oracle(matrix_from_array(a), t));
          },
          py::arg("m"), py::arg("t") = 1.0, "scaling-and-squaring Taylor reference");
    m.def("su_explicit",
          [](const ComplexArray& a, double t) {
              return array_from_matrix(su_explicit(hermitian_from_array(a), t));
          },
          py::arg("h"), py::arg("t") = 1.0, "the explicit N = 2..5 group-element forms");
    m.def("resolvent_poly",
          [](const ComplexArray& a, std::complex<double> s) {
              auto [mat, rc] = resolvent_poly(matrix_from_array(a), s);
              return py::make_tuple(array_from_matrix(mat), array_from_vector(rc.r));
          },
          py::arg("m"), py::arg("s"), "(I - sM)^{-1} matrix and its coefficients R_n(s)");

    // simplex geometry
    m.def("simplex_vertices",
          [](int n, double r) {
              const SimplexVertexSet vs = simplex_vertices(n, r);
              py::array_t<double> out({n, n});
              auto w = out.mutable_unchecked<2>();
              for (int k = 0; k < n; ++k)
                  for (int i = 0; i < n; ++i) w(k, i) = vs.vertices[k][i];
              return out;
          },
          py::arg("n"), py::arg("r") = 1.0, "rows are the N simplex vertices in E_N");
    m.def("project_spectrum",
          [](int n, double r, const std::vector<double>& axis) {
              return project_spectrum(simplex_vertices(n, r), axis).components;
          },
          py::arg("n"), py::arg("r"), py::arg("axis"));
    m.def("angles_to_spectrum",
          [](int n, double r, const std::vector<double>& angles) {
              return angles_to_spectrum(angles_from(n, r, angles)).components;
          },
          py::arg("n"), py::arg("r"), py::arg("angles"));
    m.def("spectrum_to_angles",
          [](const std::vector<double>& components) {
              EigenvalueVector ev;
              ev.components = components;
              return angles_dict(spectrum_to_angles(ev));
          },
          py::arg("components"), "components in parameterization order, not sorted");
    m.def("invariants_from_angles",
          [](int n, double r, const std::vector<double>& angles) {
              const AngleInvariants inv = invariants_from_angles(angles_from(n, r, angles));
              py::dict d;
              d["tr_h2"] = inv.tr_h2;
              d["tr_h3"] = inv.tr_h3;
              if (inv.tr_h4) d["tr_h4"] = *inv.tr_h4;
              if (inv.det_h) d["det_h"] = *inv.det_h;
              return d;
          },
          py::arg("n"), py::arg("r"), py::arg("angles"));
    m.def("su3_angle_from_invariants", &su3_angle_from_invariants, py::arg("tr_h2"),
          py::arg("det_h"));
    m.def("su4_angles_from_invariants",
          [](double tr_h2, double tr_h3, double tr_h4) {
              return angles_dict(su4_angles_from_invariants(tr_h2, tr_h3, tr_h4));
          },
          py::arg("tr_h2"), py::arg("tr_h3"), py::arg("tr_h4"));

    // spin generators
    m.def("spin_generator",
          [](double j, const std::array<double, 3>& axis) {
              return array_from_matrix(spin_generator(two_j_from(j), axis).matrix.matrix());
          },
          py::arg("j"), py::arg("axis") = std::array<double, 3>{0.0, 0.0, 1.0});
    m.def("character",
          [](double j, std::complex<double> x) {
              return py::cast(character(two_j_from(j), x));
          },
          py::arg("j"), py::arg("x"));
    m.def("spin_trace_moments",
          [](double j, int kmax) { return spin_trace_moments(two_j_from(j), kmax); },
          py::arg("j"), py::arg("kmax") = 2);
    m.def("random_traceless_hermitian",
          [](int n, std::uint64_t seed) {
              return array_from_matrix(random_traceless_hermitian(n, seed).matrix());
          },
          py::arg("n"), py::arg("seed"), "seeded GUE-style draw, exactly traceless");

    // bench
    m.def("run_bench",
          [](int nmin, int nmax, int batch, int reps, double t, std::uint64_t seed) {
              py::list rows;
              for (const BenchRow& row : run_bench(nmin, nmax, batch, reps, t, seed)) {
                  py::dict d;
                  d["method"] = row.method;
                  d["n"] = row.n;
                  d["batch"] = row.batch;
                  d["ns_per_matrix"] = row.ns_per_matrix;
                  d["max_deviation"] = row.max_deviation;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("nmin") = 2, py::arg("nmax") = 5, py::arg("batch") = 100,
          py::arg("reps") = 3, py::arg("t") = 1.0, py::arg("seed") = 12345);
}
