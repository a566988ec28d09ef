// chexpm: matrix exponentials as Cayley-Hamilton polynomials, trace-invariant
// calculus, and the simplex geometry of traceless hermitian spectra.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chexpm/bench.hpp"
#include "chexpm/expm.hpp"
#include "chexpm/json_io.hpp"
#include "chexpm/selftest.hpp"
#include "chexpm/simplex.hpp"
#include "chexpm/spin.hpp"

namespace {

using namespace chexpm;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CHEXPM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 12345;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw InvalidInputError("not a number: '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw InvalidInputError("trailing junk in number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int parse_two_j(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const int num = std::stoi(text.substr(0, slash));
        const int den = std::stoi(text.substr(slash + 1));
        if (den == 2) return num;
        if (den == 1) return 2 * num;
        throw InvalidInputError("spin j must be an integer or half-integer");
    }
    const double j = std::stod(text);
    const double two_j = 2.0 * j;
    if (std::abs(two_j - std::llround(two_j)) > 1e-9 || two_j < 0)
        throw InvalidInputError("spin j must be a nonnegative integer or half-integer");
    return static_cast<int>(std::llround(two_j));
}

ComplexMatrix load_matrix(const std::string& input_path, const std::string& inline_json) {
    if (input_path.empty() == inline_json.empty())
        throw InvalidInputError("provide exactly one of --input or --json");
    return matrix_from_json_text(input_path.empty() ? inline_json : read_file(input_path));
}

int cmd_expm(const std::string& input_path, const std::string& inline_json, double t,
             const std::string& method, bool compare, double assert_tol) {
    const ComplexMatrix m = load_matrix(input_path, inline_json);
    ComplexMatrix result(m.n());
    if (method == "ch") {
        result = expm_ch(m, t);
    } else if (method == "oracle") {
        result = expm_oracle(m, t);
    } else if (method == "explicit") {
        result = su_explicit(HermitianTraceless(m), t);
    } else {
        throw InvalidInputError("unknown method '" + method + "'");
    }

    JsonWriter w;
    w.begin_object();
    w.key("method").value(method);
    w.key("t").value(t);
    w.key("matrix");
    append_matrix(w, result);
    double dev = 0.0;
    if (compare) {
        dev = max_abs_diff(result, expm_oracle(m, t));
        w.key("max_dev_vs_oracle").value(dev);
    }
    w.end_object();
    std::cout << w.str() << "\n";
    if (compare && assert_tol > 0.0 && dev > assert_tol) {
        std::cerr << "deviation " << format_double(dev) << " exceeds --assert-tol\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_invariants(const std::string& input_path, const std::string& inline_json) {
    const ComplexMatrix m = load_matrix(input_path, inline_json);
    const int n = m.n();
    const SymmetricInvariants si = sym_from_traces(trace_powers(m, n), n);
    if (si.scale_warning)
        std::cerr << "warning: invariant magnitudes span more than 12 orders; "
                     "polynomial assembly mixes disparate scales\n";
    JsonWriter w;
    w.begin_object();
    w.key("n").value(n);
    w.key("S").begin_array();
    for (const Complex& s : si.s) w.complex_value(s);
    w.end_array();
    w.key("I").begin_array();
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k >= 2) fact *= k;
        w.complex_value(fact * si.s[k]);
    }
    w.end_array();
    w.key("power_sums").begin_array();
    for (const Complex& p : si.power_sums) w.complex_value(p);
    w.end_array();
    w.end_object();
    std::cout << w.str() << "\n";
    return kExitOk;
}

void emit_geometry_csv(const std::string& path, const SimplexVertexSet& vs,
                       const EigenvalueVector& ev) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open geometry output file: " + path);
    out << "row";
    for (int i = 0; i < vs.n; ++i) out << ",x" << i + 1;
    out << "\n";
    for (int k = 0; k < vs.n; ++k) {
        out << "vertex" << k + 1;
        for (int i = 0; i < vs.n; ++i) out << "," << format_double(vs.vertices[k][i]);
        out << "\n";
    }
    const double r = ev.radius();
    out << "axis";
    for (int i = 0; i < vs.n; ++i)
        out << "," << format_double(r > 0.0 ? ev.components[i] / r : 0.0);
    out << "\n";
}

int cmd_roots(int n, double r, const std::string& angles_text,
              const std::string& spectrum_text, const std::string& geometry_path) {
    if (angles_text.empty() == spectrum_text.empty())
        throw InvalidInputError("provide exactly one of --angles or --spectrum");

    AngleParams params;
    EigenvalueVector ev;
    if (!angles_text.empty()) {
        params.n = n;
        params.r = r;
        params.angles = parse_csv_doubles(angles_text);
        ev = angles_to_spectrum(params);
    } else {
        std::vector<double> comps = parse_csv_doubles(spectrum_text);
        if (static_cast<int>(comps.size()) != n)
            throw InvalidInputError("--spectrum needs exactly n components");
        ev.components = std::move(comps);
        params = spectrum_to_angles(ev);
    }
    const AngleInvariants inv = invariants_from_angles(params);

    JsonWriter w;
    w.begin_object();
    w.key("n").value(n);
    w.key("r").value(params.r);
    w.key("angles").begin_array();
    for (double a : params.angles) w.value(a);
    w.end_array();
    w.key("gimbal").value(params.gimbal);
    w.key("spectrum").begin_array();
    for (double v : ev.components) w.value(v);
    w.end_array();
    w.key("invariants").begin_object();
    w.key("tr_h2").value(inv.tr_h2);
    w.key("tr_h3").value(inv.tr_h3);
    if (inv.tr_h4) w.key("tr_h4").value(*inv.tr_h4);
    if (inv.det_h) w.key("det_h").value(*inv.det_h);
    w.end_object();
    w.end_object();
    std::cout << w.str() << "\n";

    if (!geometry_path.empty())
        emit_geometry_csv(geometry_path, simplex_vertices(n, params.r), ev);
    return kExitOk;
}

int cmd_spin(const std::string& j_text, const std::string& axis_text, double theta) {
    const int two_j = parse_two_j(j_text);
    const std::vector<double> ax = parse_csv_doubles(axis_text);
    if (ax.size() != 3) throw InvalidInputError("--axis needs three components");
    const SpinGenerator g = spin_generator(two_j, {ax[0], ax[1], ax[2]});
    const ComplexMatrix u = expm_ch(g.matrix, theta);
    Complex tr{};
    for (int i = 0; i < u.n(); ++i) tr += u(i, i);
    const Complex chi = character(two_j, kI * theta);

    JsonWriter w;
    w.begin_object();
    w.key("two_j").value(two_j);
    w.key("theta").value(theta);
    w.key("axis").begin_array();
    for (double a : ax) w.value(a);
    w.end_array();
    w.key("generator");
    append_matrix(w, g.matrix.matrix());
    w.key("exponential");
    append_matrix(w, u);
    w.key("character").begin_object();
    w.key("value").complex_value(chi);
    w.key("trace_of_exponential").complex_value(tr);
    w.key("deviation").value(std::abs(tr - chi));
    w.end_object();
    w.end_object();
    std::cout << w.str() << "\n";
    return kExitOk;
}

int cmd_bench(int nmin, int nmax, int batch, int reps, double t, double gate,
              std::uint64_t seed, const std::string& out_path) {
    const std::vector<BenchRow> rows = run_bench(nmin, nmax, batch, reps, t, seed);
    std::ostringstream csv;
    csv << "method,n,batch,ns_per_matrix,max_deviation\n";
    bool gate_ok = true;
    for (const BenchRow& row : rows) {
        if (row.max_deviation > gate) gate_ok = false;
        csv << row.method << "," << row.n << "," << row.batch << ","
            << format_double(row.ns_per_matrix) << "," << format_double(row.max_deviation)
            << "\n";
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw InvalidInputError("cannot open bench output file: " + out_path);
        out << csv.str();
    }
    if (!gate_ok) {
        std::cerr << "benchmark correctness gate failed (deviation above "
                  << format_double(gate) << ")\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_selftest(const std::vector<std::string>& suites, int samples, std::uint64_t seed) {
    const std::vector<SuiteResult> results = run_selftest(suites, samples, seed);
    bool all_pass = true;
    std::printf("%-12s %8s %8s %12s  %s\n", "suite", "checks", "failed", "worst", "note");
    for (const SuiteResult& r : results) {
        all_pass = all_pass && r.pass();
        std::printf("%-12s %8d %8d %12.3e  %s [%s]\n", r.name.c_str(), r.checks, r.failures,
                    r.worst, r.pass() ? "pass" : "FAIL", r.worst_note.c_str());
    }
    return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cayley-Hamilton matrix exponentials and SU(N) spectral geometry"};
    app.require_subcommand(1);

    std::string input_path, inline_json, method = "ch";
    double t = 1.0, assert_tol = 0.0;
    bool compare = false;
    CLI::App* expm = app.add_subcommand("expm", "exponentiate a matrix");
    expm->add_option("--input", input_path, "matrix JSON file");
    expm->add_option("--json", inline_json, "inline matrix JSON");
    expm->add_option("--t", t, "group parameter t in exp(itM)");
    expm->add_option("--method", method, "ch | explicit | oracle");
    expm->add_flag("--compare", compare, "report max-norm deviation from the oracle");
    expm->add_option("--assert-tol", assert_tol, "exit 2 when the deviation exceeds this");

    std::string inv_input, inv_json;
    CLI::App* invariants = app.add_subcommand("invariants", "trace invariants and S_m");
    invariants->add_option("--input", inv_input, "matrix JSON file");
    invariants->add_option("--json", inv_json, "inline matrix JSON");

    int roots_n = 3;
    double roots_r = 1.0;
    std::string angles_text, spectrum_text, geometry_path;
    CLI::App* roots = app.add_subcommand("roots", "angle parameterization of real spectra");
    roots->add_option("--n", roots_n, "dimension (3, 4 or 5)")->required();
    roots->add_option("--r", roots_r, "radius sqrt(tr H^2) used with --angles");
    roots->add_option("--angles", angles_text, "comma-separated angles");
    roots->add_option("--spectrum", spectrum_text, "comma-separated eigenvalue components");
    roots->add_option("--emit-geometry", geometry_path, "write simplex vertex/axis CSV here");

    std::string j_text = "1/2", axis_text = "0,0,1";
    double theta = 1.0;
    CLI::App* spin = app.add_subcommand("spin", "embedded spin-j generator checks");
    spin->add_option("--j", j_text, "spin (e.g. 1, 3/2, 2.5)");
    spin->add_option("--axis", axis_text, "rotation axis (three components)");
    spin->add_option("--theta", theta, "rotation angle");

    int nmin = 2, nmax = 8, batch = 1000, reps = 5;
    double bench_t = 1.0, gate = 1e-9;
    std::uint64_t seed = default_seed();
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "time the exponential methods");
    bench->add_option("--nmin", nmin, "smallest dimension");
    bench->add_option("--nmax", nmax, "largest dimension");
    bench->add_option("--batch", batch, "matrices per dimension");
    bench->add_option("--reps", reps, "repetitions, best wall time wins");
    bench->add_option("--t", bench_t, "group parameter");
    bench->add_option("--gate", gate, "correctness gate on max deviation");
    bench->add_option("--seed", seed, "PRNG seed");
    bench->add_option("--out", bench_out, "write CSV here instead of stdout");

    std::vector<std::string> suites;
    int samples = 25;
    std::uint64_t st_seed = default_seed();
    CLI::App* selftest = app.add_subcommand("selftest", "run the property suites");
    selftest->add_option("--suite", suites, "suite name (repeatable); default all");
    selftest->add_option("--samples", samples, "draws per suite");
    selftest->add_option("--seed", st_seed, "PRNG seed");

    try {
        app.parse(argc, argv);
        if (expm->parsed())
            return cmd_expm(input_path, inline_json, t, method, compare, assert_tol);
        if (invariants->parsed()) return cmd_invariants(inv_input, inv_json);
        if (roots->parsed())
            return cmd_roots(roots_n, roots_r, angles_text, spectrum_text, geometry_path);
        if (spin->parsed()) return cmd_spin(j_text, axis_text, theta);
        if (bench->parsed())
            return cmd_bench(nmin, nmax, batch, reps, bench_t, gate, seed, bench_out);
        if (selftest->parsed()) return cmd_selftest(suites, samples, st_seed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;  // stable exit contract
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedOrderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
