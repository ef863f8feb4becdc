#include "spinpoint/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinpoint/exceptional.hpp"
#include "spinpoint/fermi.hpp"
#include "spinpoint/kernel.hpp"
#include "spinpoint/matrix_io.hpp"
#include "spinpoint/nonnormal.hpp"
#include "spinpoint/spin.hpp"

namespace spinpoint::cli {

namespace {

using nlohmann::json;

double parse_real(const std::string& text, const std::string& code) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw InvalidArgument(code, "cannot parse '" + text + "' as a number");
    }
    return v;
}

/// "RE,IM" or "RE".
Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_real(text, "invalid-complex"), 0.0};
    return {parse_real(text.substr(0, comma), "invalid-complex"),
            parse_real(text.substr(comma + 1), "invalid-complex")};
}

Tolerance tolerance_from_env() {
    const char* env = std::getenv("SPINPOINT_TOL");
    if (env == nullptr || *env == '\0') return {};
    const double v = parse_real(env, "invalid-tolerance");
    if (v < 0.0) throw InvalidArgument("invalid-tolerance", "SPINPOINT_TOL must be nonnegative");
    return {v, v};
}

std::string spin_text(Spin s) {
    const int t = s.twice_spin();
    return t % 2 == 0 ? std::to_string(t / 2) : std::to_string(t) + "/2";
}

struct SpinFlags {
    std::string spin;
    int twice_spin = 0;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--spin", spin, "spin quantum number, e.g. 3/2 or 1.5");
        auto* b = cmd->add_option("--twice-spin", twice_spin, "2s as an integer");
        a->excludes(b);
    }

    Spin resolve() const {
        if (!spin.empty()) return Spin::parse(spin);
        if (twice_spin != 0) return Spin(twice_spin);
        throw InvalidArgument("invalid-spin", "one of --spin or --twice-spin is required");
    }
};

void write_matrix(std::ostream& out, const CMatrix& m, const std::string& format) {
    if (format == "json") {
        out << io::to_json(m).dump(2) << "\n";
    } else if (format == "mm") {
        out << io::to_matrix_market(m);
    } else if (format == "pretty") {
        out << io::to_pretty(m);
    } else {
        out << "row,col,re,im\n";
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                out << r << "," << c << "," << io::format_double(m(r, c).real()) << ","
                    << io::format_double(m(r, c).imag()) << "\n";
    }
}

json normality_json(const NormalityReport& r) {
    return {{"defect", r.defect}, {"henrici", r.henrici}, {"is_normal", r.is_normal}, {"is_hermitian", r.is_hermitian}};
}

json nilpotency_json(const NilpotencyReport& r) {
    return {{"is_nilpotent", r.is_nilpotent},
            {"index", r.index ? json(*r.index) : json(nullptr)},
            {"rank_chain", r.rank_chain}};
}

json candidate_json(const EPCandidate& c) {
    return {{"z", io::to_json(c.z)},
            {"degenerate_eigenvalue", io::to_json(c.degenerate_eigenvalue)},
            {"gap", c.gap},
            {"discriminant_residual", c.discriminant_residual},
            {"newton_converged", c.newton_converged},
            {"multiplicity", c.multiplicity},
            {"geometric_multiplicity", c.geometric_multiplicity},
            {"defective", c.defective}};
}

CMatrix spin_operator(Spin s, const std::string& op, const std::string& z_text) {
    if (op == "hz") {
        if (z_text.empty()) throw InvalidArgument("missing-z", "--op hz requires --z RE,IM");
        return nonnormal_hamiltonian(s, Axis::One, parse_complex(z_text));
    }
    if (!z_text.empty()) throw InvalidArgument("unexpected-z", "--z is only valid with --op hz");
    const SpinMatrices sm = spin_matrices(s);
    if (op == "s1") return sm.s1;
    if (op == "s2") return sm.s2;
    if (op == "s3") return sm.s3;
    if (op == "s+") return sm.s_plus;
    if (op == "s-") return sm.s_minus;
    if (op == "h1") return nonnormal_hamiltonian(s, Axis::One, kI);
    return nonnormal_hamiltonian(s, Axis::Two, kI);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spinpoint: nonnormal spin matrices and exceptional points"};
    app.require_subcommand(1, 1);
    const std::vector<std::string> matrix_formats{"json", "mm", "pretty", "csv"};

    auto* gen = app.add_subcommand("gen", "generate a spin matrix");
    SpinFlags gen_spin;
    gen_spin.attach(gen);
    std::string gen_op, gen_z, gen_format = "json";
    gen->add_option("--op", gen_op, "s1, s2, s3, s+, s-, h1, h2 or hz")
        ->required()
        ->check(CLI::IsMember({"s1", "s2", "s3", "s+", "s-", "h1", "h2", "hz"}));
    gen->add_option("--z", gen_z, "coupling RE,IM for --op hz");
    gen->add_option("--format", gen_format)->check(CLI::IsMember(matrix_formats));

    auto* check = app.add_subcommand("check", "normality, nilpotency and rank report for a matrix");
    std::string check_file, check_format = "json";
    check->add_option("matrix", check_file, "matrix file (JSON or Matrix Market)")->required();
    check->add_option("--format", check_format)->check(CLI::IsMember({"json", "pretty"}));

    auto* kernel = app.add_subcommand("kernel", "null vector of s3 + i s_axis");
    SpinFlags kernel_spin;
    kernel_spin.attach(kernel);
    int kernel_axis = 1;
    std::string kernel_format = "json";
    kernel->add_option("--axis", kernel_axis, "1 or 2");
    kernel->add_option("--format", kernel_format)->check(CLI::IsMember({"json", "pretty"}));

    auto* ep = app.add_subcommand("ep", "exceptional points of A + zB");
    std::string ep_a, ep_b;
    ep->add_option("--a", ep_a)->required();
    ep->add_option("--b", ep_b)->required();

    auto* trace = app.add_subcommand("trace", "eigenvalue sheets around a loop in z");
    std::string tr_a, tr_b, tr_center, tr_csv, tr_format = "json";
    double tr_radius = 0.0;
    std::size_t tr_steps = 0;
    int tr_turns = 1;
    trace->add_option("--a", tr_a)->required();
    trace->add_option("--b", tr_b)->required();
    trace->add_option("--center", tr_center, "RE,IM")->required();
    trace->add_option("--radius", tr_radius)->required();
    trace->add_option("--steps", tr_steps, "steps per turn (>= 16)")->required();
    trace->add_option("--turns", tr_turns);
    trace->add_option("--csv", tr_csv, "also write trajectories to this CSV file");
    trace->add_option("--format", tr_format)->check(CLI::IsMember({"json", "csv"}));

    auto* fermi = app.add_subcommand("fermi", "two-mode quadratic Fermi operator representation");
    std::string fermi_m;
    fermi->add_option("--m", fermi_m)->required();

    auto* sweep = app.add_subcommand("sweep-phi", "sigma3 + e^{i phi} sigma1 for phi in [0, pi/2]");
    std::size_t sweep_steps = 0;
    std::string sweep_format = "json";
    sweep->add_option("--steps", sweep_steps)->required();
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "csv"}));

    auto fail = [&](const std::string& code, const std::string& message, int status) {
        err << json{{"error", code}, {"message", message}}.dump() << "\n";
        return status;
    };

    std::vector<std::string> argv_store{"spinpoint"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail("invalid-arguments", e.what(), 1);
    }

    try {
        const Tolerance tol = tolerance_from_env();

        if (gen->parsed()) {
            write_matrix(out, spin_operator(gen_spin.resolve(), gen_op, gen_z), gen_format);
        } else if (check->parsed()) {
            const CMatrix m = io::read_matrix_file(check_file);
            if (!m.is_square()) throw DimensionError("check: square matrix required");
            const auto normal = normality_report(m, tol);
            const auto nil = nilpotency_report(m, tol);
            if (check_format == "pretty") {
                out << io::to_pretty(m) << "normal: " << (normal.is_normal ? "yes" : "no")
                    << " (defect " << normal.defect << ", henrici " << normal.henrici << ")\n"
                    << "hermitian: " << (normal.is_hermitian ? "yes" : "no") << "\n"
                    << "rank: " << rank(m, tol) << "\n"
                    << "nilpotent: " << (nil.is_nilpotent ? "yes, index " + std::to_string(*nil.index) : "no")
                    << "\n";
            } else {
                out << json{{"matrix", io::to_json(m)},
                            {"normality", normality_json(normal)},
                            {"nilpotency", nilpotency_json(nil)},
                            {"rank", rank(m, tol)},
                            {"trace", io::to_json(m.trace())},
                            {"frobenius_norm", frobenius_norm(m)},
                            {"eigenvalues", io::to_json(eigenvalues(m))}}
                           .dump(2)
                    << "\n";
            }
        } else if (kernel->parsed()) {
            const Spin s = kernel_spin.resolve();
            const Axis axis = parse_axis(kernel_axis);
            const KernelSolution k = kernel_vector(s, axis);
            const std::size_t r = rank(nonnormal_hamiltonian(s, axis, kI), tol);
            if (kernel_format == "pretty") {
                out << "spin " << spin_text(s) << ", axis " << kernel_axis << ", rank " << r << "\n";
                for (const auto& v : k.vector) out << "  " << io::to_pretty(CMatrix(1, 1, {v}));
                out << "residual " << k.residual << "\n";
            } else {
                out << json{{"spin", spin_text(s)},
                            {"twice_spin", s.twice_spin()},
                            {"axis", kernel_axis},
                            {"vector", io::to_json(k.vector)},
                            {"raw_vector", io::to_json(k.raw_vector)},
                            {"residual", k.residual},
                            {"consistency", k.consistency},
                            {"rank", r},
                            {"unique", r == s.dimension() - 1}}
                           .dump(2)
                    << "\n";
            }
        } else if (ep->parsed()) {
            const PencilFamily p(io::read_matrix_file(ep_a), io::read_matrix_file(ep_b));
            json list = json::array();
            for (const auto& c : find_exceptional_points(p)) list.push_back(candidate_json(c));
            out << list.dump(2) << "\n";
        } else if (trace->parsed()) {
            const PencilFamily p(io::read_matrix_file(tr_a), io::read_matrix_file(tr_b));
            const PathSpec path{parse_complex(tr_center), tr_radius, tr_steps, tr_turns};
            std::vector<EPCandidate> known;
            try {
                known = find_exceptional_points(p);
            } catch (const ZeroDiscriminantError&) {
                // every z degenerate: nothing to avoid
            }
            const MonodromyResult r = trace_sheets(p, path, known);

            std::ostringstream csv;
            csv << "step,t,z_re,z_im";
            for (std::size_t k = 0; k < r.permutation.size(); ++k) csv << ",eig" << k + 1 << "_re,eig" << k + 1 << "_im";
            csv << "\n";
            for (std::size_t s = 0; s < r.t.size(); ++s) {
                csv << s << "," << io::format_double(r.t[s]) << "," << io::format_double(r.z[s].real()) << ","
                    << io::format_double(r.z[s].imag());
                for (const auto& e : r.trajectories[s])
                    csv << "," << io::format_double(e.real()) << "," << io::format_double(e.imag());
                csv << "\n";
            }
            if (!tr_csv.empty()) {
                std::ofstream f(tr_csv);
                if (!f) throw InvalidArgument("unwritable-file", "cannot write '" + tr_csv + "'");
                f << csv.str();
            }
            if (tr_format == "csv") {
                out << csv.str();
            } else {
                std::vector<std::size_t> one_based;
                for (auto k : r.permutation) one_based.push_back(k + 1);
                out << json{{"permutation", one_based}, {"closure_error", r.closure_error}}.dump(2) << "\n";
            }
        } else if (fermi->parsed()) {
            const FermiQuadratic f = quadratic_fermi_rep(io::read_matrix_file(fermi_m));
            const RepEigenAnalysis a = rep_eigen_analysis(f, tol);
            out << json{{"rep", io::to_json(f.rep)},
                        {"eigenvalues", io::to_json(a.eigenvalues)},
                        {"zero_multiplicity", a.zero_multiplicity}}
                       .dump(2)
                << "\n";
        } else if (sweep->parsed()) {
            if (sweep_steps < 2) throw InvalidArgument("invalid-steps", "sweep-phi needs --steps >= 2");
            const double last = static_cast<double>(sweep_steps - 1);
            json rows = json::array();
            std::ostringstream csv;
            csv << "phi,lam_plus_re,lam_plus_im,lam_minus_re,lam_minus_im,defect,henrici\n";
            for (std::size_t k = 0; k < sweep_steps; ++k) {
                const double phi = static_cast<double>(k) * (std::numbers::pi / 2) / last;
                const PhiFamily f = phi_family(phi);
                rows.push_back({{"phi", phi},
                                {"lam_plus", io::to_json(f.eigenvalues[0])},
                                {"lam_minus", io::to_json(f.eigenvalues[1])},
                                {"defect", f.defect},
                                {"henrici", f.henrici}});
                csv << io::format_double(phi) << "," << io::format_double(f.eigenvalues[0].real()) << ","
                    << io::format_double(f.eigenvalues[0].imag()) << "," << io::format_double(f.eigenvalues[1].real())
                    << "," << io::format_double(f.eigenvalues[1].imag()) << "," << io::format_double(f.defect) << ","
                    << io::format_double(f.henrici) << "\n";
            }
            if (sweep_format == "csv") {
                out << csv.str();
            } else {
                out << rows.dump(2) << "\n";
            }
        }
    } catch (const Error& e) {
        return fail(e.code(), e.what(), e.numerical() ? 2 : 1);
    } catch (const std::exception& e) {
        return fail("internal-error", e.what(), 2);
    }
    return 0;
}

}  // namespace spinpoint::cli
