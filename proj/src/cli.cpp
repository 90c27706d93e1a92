#include "qcensus/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcensus/arith.hpp"
#include "qcensus/count.hpp"
#include "qcensus/emit.hpp"
#include "qcensus/forms.hpp"
#include "qcensus/mainterm.hpp"
#include "qcensus/shear.hpp"
#include "qcensus/special.hpp"

namespace qcensus::cli {

namespace {

using Int = std::int64_t;

int thread_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QUADRIC_CENSUS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

// "a,b,c" with entries like "3", "-3", "5/2", "-5/2"
forms::FormTriple parse_form(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw std::domain_error("form must be a,b,c");
    auto rat = [](const std::string& t) {
        auto slash = t.find('/');
        if (slash == std::string::npos) return forms::Rat(std::stoll(t));
        return forms::Rat(std::stoll(t.substr(0, slash)), std::stoll(t.substr(slash + 1)));
    };
    return {rat(parts[0]), rat(parts[1]), rat(parts[2])};
}

special::HalfPlanePoint parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::domain_error("z must be x,y");
    special::HalfPlanePoint z{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    if (!(z.im > 0.0)) throw std::domain_error("im(z) must be > 0");
    return z;
}

std::string emit_series(const mainterm::CountSeries& s, const std::string& format) {
    if (format == "csv") return emit::series_csv(s);
    if (format == "json") return emit::series_json(s);
    if (format == "svg") return emit::series_svg(s);
    throw std::domain_error("unknown format: " + format);
}

int run_impl(const std::vector<std::string>& args) {
    CLI::App app{"quadric-census: exact counts and analytic checks on square-discriminant quadrics"};
    app.require_subcommand(1);

    std::string format = "csv", out_path, grid_spec, form_str, z_str = "0,1", cusp_str = "infinity";
    std::string lattice_str = "gamma1", input_path, target_str = "w";
    Int d = 144, n = 1, p = 1;
    double t_value = 0.0, delta = 0.05, s_value = 2.0, y_value = 1.1;
    Int radius = 1500;
    int panels = 256, threads_flag = 0;

    auto* constants = app.add_subcommand("constants", "emit the analytic constants");
    constants->add_option("--format", format, "csv|json");

    auto add_count = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--d", d, "square discriminant")->required();
        c->add_option("--t", t_value, "single ball radius");
        c->add_option("--t-grid", grid_spec, "grid spec log:a:b:k or lin:a:b:k");
        c->add_option("--format", format, "csv|json|svg");
        c->add_option("--out", out_path, "output path (default stdout)");
        c->add_option("--threads", threads_flag, "worker threads (or QUADRIC_CENSUS_THREADS)");
        return c;
    };
    auto* count_w = add_count("count", "count W_d points with main term and residual");
    auto* count_q = add_count("count-q", "count V_d forms with main term and residual");

    auto* orbits = app.add_subcommand("orbits", "list orbit representatives");
    orbits->add_option("--n", n, "sqrt of the discriminant")->required();
    orbits->add_option("--lattice", lattice_str, "gamma1|gamma2");

    auto* classify = app.add_subcommand("classify", "classify a form into its orbit");
    classify->add_option("--form", form_str, "a,b,c (halves as p/2)")->required();
    classify->add_option("--lattice", lattice_str, "gamma1|gamma2");

    auto* kron = app.add_subcommand("kronecker", "Kronecker limit at a point");
    kron->add_option("--z", z_str, "x,y");
    kron->add_option("--p", p, "1 for SL2(Z), else a prime for Gamma_0(p)");
    kron->add_option("--cusp", cusp_str, "infinity|zero");

    auto* eis = app.add_subcommand("eis-check", "direct Eisenstein sum vs Fourier model");
    eis->add_option("--s", s_value, "spectral parameter (> 1.5)");
    eis->add_option("--y", y_value, "expansion height");
    eis->add_option("--p", p, "level: 1, or a prime");
    eis->add_option("--radius", radius, "disc truncation radius");
    eis->add_option("--panels", panels, "trapezoid nodes");

    auto* shear_cmd = app.add_subcommand("shear", "shear integral vs predicted main term");
    shear_cmd->add_option("--t-grid", grid_spec, "grid spec")->required();
    shear_cmd->add_option("--delta", delta, "bump radius in (0, 0.5)");
    shear_cmd->add_option("--p", p, "level: 1, or a prime");
    shear_cmd->add_option("--out", out_path, "output path");

    auto* fit = app.add_subcommand("fit", "fit residual exponent from a series CSV");
    fit->add_option("--input", input_path, "CSV with header T,count,main,residual")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (constants->parsed()) {
            const auto& c = special::special_constants();
            write_output(format == "json" ? emit::constants_json(c) : emit::constants_csv(c),
                         out_path);
            return 0;
        }
        if (count_w->parsed() || count_q->parsed()) {
            auto target = count_w->parsed() ? mainterm::CountTarget::W : mainterm::CountTarget::Q;
            std::vector<double> grid =
                grid_spec.empty() ? std::vector<double>{t_value} : emit::parse_grid(grid_spec);
            if (grid.size() == 1 && !(grid[0] > 0.0))
                throw std::domain_error("provide --t or --t-grid");
            auto series = mainterm::residual_series(d, grid, target, thread_count(threads_flag));
            write_output(emit_series(series, format), out_path);
            return 0;
        }
        if (orbits->parsed()) {
            auto lat = lattice_str == "gamma2" ? forms::Lattice::Gamma2 : forms::Lattice::Gamma1;
            std::string out = "lattice,kind,j,a,b,c\n";
            for (const auto& [cls, rep] : forms::orbit_reps(n, lat)) {
                auto ratstr = [](forms::Rat r) {
                    return r.den == 1 ? std::to_string(r.num)
                                      : std::to_string(r.num) + "/" + std::to_string(r.den);
                };
                out += lattice_str + "," +
                       (cls.kind == forms::FormKind::Tilde ? "tilde" : "plain") + "," +
                       std::to_string(cls.j) + "," + ratstr(rep.a) + "," + ratstr(rep.b) + "," +
                       ratstr(rep.c) + "\n";
            }
            write_output(out, out_path);
            return 0;
        }
        if (classify->parsed()) {
            auto lat = lattice_str == "gamma2" ? forms::Lattice::Gamma2 : forms::Lattice::Gamma1;
            auto cls = forms::classify(parse_form(form_str), lat);
            std::cout << lattice_str << ","
                      << (cls.kind == forms::FormKind::Tilde ? "tilde" : "plain") << "," << cls.j
                      << "\n";
            return 0;
        }
        if (kron->parsed()) {
            auto z = parse_point(z_str);
            double v;
            if (p == 1)
                v = special::kronecker_sl2z(z);
            else
                v = special::kronecker_gamma0p(
                    z, p, cusp_str == "zero" ? special::Cusp::Zero : special::Cusp::Infinity);
            std::cout << emit::format_real(v) << "\n";
            return 0;
        }
        if (eis->parsed()) {
            double y = y_value;
            std::string out = "p,at_cusp,of_series,m,direct,model,difference\n";
            std::vector<special::Cusp> cusps{special::Cusp::Infinity};
            if (p > 1) cusps.push_back(special::Cusp::Zero);
            special::EisTruncation tr;
            tr.disc_radius = radius;
            tr.nodes = panels;
            for (auto at : cusps)
                for (auto of : cusps) {
                    auto direct = special::eisenstein_fourier_direct(y, s_value, p, at, of,
                                                                     {0, 1, 2}, tr);
                    for (Int m = 0; m <= 2; ++m) {
                        double model =
                            special::eisenstein_fourier_model(y, s_value, p, at, of, m);
                        out += std::to_string(p) + "," +
                               (at == special::Cusp::Infinity ? "infinity" : "zero") + "," +
                               (of == special::Cusp::Infinity ? "infinity" : "zero") + "," +
                               std::to_string(m) + "," +
                               emit::format_real(direct[static_cast<std::size_t>(m)]) + "," +
                               emit::format_real(model) + "," +
                               emit::format_real(direct[static_cast<std::size_t>(m)] - model) +
                               "\n";
                    }
                }
            write_output(out, out_path);
            return 0;
        }
        if (shear_cmd->parsed()) {
            auto grid = emit::parse_grid(grid_spec);
            auto bump = shear::make_bump(delta);
            std::string out = "T,integral,predicted,residual\n";
            for (double T : grid) {
                double v = shear::shear_integral(T, bump, p);
                double pred = shear::predicted_shear(T, bump, p);
                out += emit::format_real(T) + "," + emit::format_real(v) + "," +
                       emit::format_real(pred) + "," + emit::format_real(v - pred) + "\n";
            }
            write_output(out, out_path);
            return 0;
        }
        if (fit->parsed()) {
            std::ifstream in(input_path);
            if (!in) throw std::domain_error("cannot open input: " + input_path);
            auto series = emit::parse_series_csv(in);
            std::cout << emit::format_real(mainterm::fit_exponent(series)) << "\n";
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& argv) { return run_impl(argv); }

}  // namespace qcensus::cli
