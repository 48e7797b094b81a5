// Command-line surface over the library: catalog listing, generatrix
// reconstruction, W-diagrams, Weingarten-relation solving, prescribed
// curvature builds, meshing and self-verification.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotw/curvature.hpp"
#include "rotw/generatrix.hpp"
#include "rotw/momentum.hpp"
#include "rotw/prescribe.hpp"
#include "rotw/surface.hpp"
#include "rotw/weingarten.hpp"

using json = nlohmann::ordered_json;

namespace {

json number_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? json("inf") : json("-inf");
}

json momentum_report(const rotw::MomentumFn& m) {
    json j;
    j["label"] = m.label;
    j["params"] = json::object();
    for (const auto& [key, value] : m.params) j["params"][key] = value;
    j["domain"] = {{"lo", number_or_inf(m.domain.lo)}, {"hi", number_or_inf(m.domain.hi)}};
    return j;
}

// Writes to --out when given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw rotw::IoError("cannot open '" + path + "' for writing");
            use_file_ = true;
        }
    }
    std::ostream& stream() { return use_file_ ? file_ : std::cout; }

  private:
    std::ofstream file_;
    bool use_file_ = false;
};

std::function<double(double)> parse_fn_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw rotw::BadParams("function '" + text + "' is not const:<v> or poly:<c0,c1,...>");
    const std::string head = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (head == "const") {
        const double v = std::stod(body);
        return [v](double) { return v; };
    }
    if (head == "poly") {
        std::vector<double> coeffs;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(std::stod(item));
        if (coeffs.empty()) throw rotw::BadParams("poly: needs at least one coefficient");
        return [coeffs](double x) {
            double acc = 0;
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
            return acc;
        };
    }
    throw rotw::BadParams("function '" + text + "': unknown head '" + head + "'");
}

double default_x0(const rotw::MomentumFn& m) { return rotw::wdiagram_window(m).midpoint(); }

struct CurveArgs {
    double x0 = std::numeric_limits<double>::quiet_NaN();
    double z0 = 0.0;
    int branch = 1;
    double span = 5.0;
    int resample_n = 0;
};

rotw::GeneratrixCurve build_curve(const rotw::MomentumFn& m, const CurveArgs& args) {
    const double x0 = std::isnan(args.x0) ? default_x0(m) : args.x0;
    rotw::GeneratrixCurve curve = rotw::reconstruct(m, x0, args.z0, args.branch, args.span);
    if (args.resample_n >= 2) return rotw::resample(curve, args.resample_n);
    return curve;
}

void add_curve_options(CLI::App* cmd, CurveArgs& args) {
    cmd->add_option("--x0", args.x0, "starting distance to the axis (default: domain middle)");
    cmd->add_option("--z0", args.z0, "starting height");
    cmd->add_option("--branch", args.branch, "sign of cos(theta0): +1 or -1")
        ->check(CLI::IsMember({1, -1}));
    cmd->add_option("--span", args.span, "arc length to integrate")->check(CLI::PositiveNumber);
    cmd->add_option("-n,--n", args.resample_n, "resample to n equally spaced states");
}

int cmd_catalog(bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& info : rotw::catalog_listing()) {
            json j;
            j["name"] = info.name;
            j["params"] = info.param_names;
            j["description"] = info.description;
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    for (const auto& info : rotw::catalog_listing()) {
        std::cout << info.name;
        if (!info.param_names.empty()) {
            std::cout << ":";
            for (std::size_t i = 0; i < info.param_names.size(); ++i)
                std::cout << (i ? "," : "") << info.param_names[i] << "=<v>";
        }
        std::cout << "\n    " << info.description << "\n";
    }
    return 0;
}

int cmd_reconstruct(const std::string& surface, const CurveArgs& args, const std::string& out,
                    bool as_json) {
    const rotw::MomentumFn m = rotw::catalog(rotw::parse_surface_spec(surface));
    const rotw::GeneratrixCurve curve = build_curve(m, args);
    if (as_json) {
        json j = momentum_report(m);
        j["samples"] = curve.samples().size();
        j["s_max"] = curve.s_max();
        j["turning_points"] = curve.turning_points();
        if (curve.exit()) {
            j["exit"] = {{"reason", curve.exit()->reason}, {"s", curve.exit()->s}};
        }
        std::cout << j.dump(2) << "\n";
    }
    Output target(out);
    rotw::write_curve_csv(target.stream(), curve);
    return 0;
}

int cmd_wdiagram(const std::string& surface, int n, const std::string& out) {
    const rotw::MomentumFn m = rotw::catalog(rotw::parse_surface_spec(surface));
    Output target(out);
    rotw::write_curvature_csv(target.stream(), rotw::wdiagram(m, n));
    return 0;
}

int cmd_solve(const std::string& relation_text, double c, double a_coef, int sign,
              bool sphere_branch, int table_n, const CurveArgs& curve_args,
              bool do_reconstruct, const std::string& out, bool as_json) {
    const rotw::ParsedRelation parsed = rotw::parse_relation_spec(relation_text);
    rotw::MomentumFn m;
    json extra;

    if (parsed.family == "linear") {
        m = rotw::solve_linear(parsed.params.at("p"),
                               parsed.params.count("q") ? parsed.params.at("q") : 0.0, c);
    } else if (parsed.family == "special") {
        const double d = parsed.params.count("d") ? parsed.params.at("d") : c;
        m = rotw::solve_special_linear(parsed.params.at("a"), parsed.params.at("b"),
                                       parsed.params.count("c") ? parsed.params.at("c") : 0.0,
                                       d, sign);
    } else if (parsed.family == "cubic") {
        const double mu = parsed.params.at("mu");
        m = rotw::solve_cubic(mu, c);
        const rotw::QuadricClass q = rotw::classify_cubic(mu, c);
        extra["classification"] = rotw::quadric_name(q.kind);
        for (const auto& [key, value] : q.params) extra[key] = value;
    } else if (parsed.family == "hyperbola") {
        const double mu = parsed.params.at("mu");
        if (sphere_branch) {
            m = rotw::hyperbola_sphere_branch(mu);
            extra["classification"] = "sphere";
            extra["R"] = m.params.at("R");
        } else {
            m = rotw::solve_hyperbola(mu, a_coef);
            extra["classification"] = "elasticoid";
            extra["a"] = m.params.at("a");
            extra["k"] = m.params.at("k");
        }
    } else if (parsed.family == "const") {
        const auto rel = std::get<rotw::ConstPrincipalRelation>(parsed.relation());
        const rotw::ConstPrincipalResult res =
            rotw::solve_const_principal(rel.which, rel.value, c);
        if (res.cylinder) extra["cylinder_radius"] = res.cylinder->radius;
        if (!res.momentum) throw rotw::EmptyDomain("const relation: no momentum solution");
        m = *res.momentum;
        extra["classification"] = m.label;
    } else {
        throw rotw::BadParams("unsupported relation family '" + parsed.family + "'");
    }

    // Pointwise residual of the defining relation over the sampled diagram.
    double max_residual = 0;
    try {
        for (const auto& rec : rotw::wdiagram(m, 100))
            max_residual = std::max(max_residual,
                                    std::fabs(rotw::residual(parsed.relation(), rec)));
    } catch (const rotw::GenericNotPointwise&) {
        max_residual = std::numeric_limits<double>::quiet_NaN();
    }

    json report = momentum_report(m);
    for (auto& [key, value] : extra.items()) report[key] = value;
    report["residuals"] = {{"max_abs", max_residual}};
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << m.label << "  domain (" << m.domain.lo << ", " << m.domain.hi
                  << ")  max residual " << max_residual << "\n";

    if (table_n >= 2) {
        Output target(out);
        target.stream() << "x,K,K_prime\n";
        char buf[120];
        const rotw::Interval w = rotw::wdiagram_window(m);
        for (int i = 0; i < table_n; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (static_cast<double>(i) / (table_n - 1));
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x, m.eval(x), m.deriv(x));
            target.stream() << buf;
        }
    } else if (do_reconstruct) {
        Output target(out);
        rotw::write_curve_csv(target.stream(), build_curve(m, curve_args));
    }
    return 0;
}

int cmd_prescribe(const std::string& h_spec, const std::string& kg_spec, double c,
                  double base_x, int sign, const CurveArgs& curve_args, bool do_reconstruct,
                  int graph_n, const std::string& out, bool as_json) {
    if (h_spec.empty() == kg_spec.empty())
        throw rotw::BadParams("prescribe: exactly one of --H / --KG is required");
    rotw::PrescribedBuild build =
        h_spec.empty()
            ? rotw::from_gauss_curvature(parse_fn_spec(kg_spec), c,
                                         std::isnan(base_x) ? 0.0 : base_x, sign)
            : rotw::from_mean_curvature(parse_fn_spec(h_spec), c,
                                        std::isnan(base_x) ? 1.0 : base_x);
    json report = momentum_report(build.momentum);
    report["constant"] = build.constant;
    report["base_x"] = build.base_x;
    if (build.truncation) report["truncation"] = *build.truncation;
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << build.momentum.label << "  domain (" << build.momentum.domain.lo << ", "
                  << build.momentum.domain.hi << ")\n";

    if (graph_n >= 2) {
        const rotw::Interval w = rotw::wdiagram_window(build.momentum);
        Output target(out);
        target.stream() << "x,z\n";
        char buf[80];
        for (const auto& [x, z] : rotw::graph_z_of_x(build.momentum, w.lo, w.hi, 1, graph_n)) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, z);
            target.stream() << buf;
        }
    } else if (do_reconstruct) {
        Output target(out);
        rotw::write_curve_csv(target.stream(), build_curve(build.momentum, curve_args));
    }
    return 0;
}

int cmd_mesh(const std::string& surface, CurveArgs curve_args, int ns, int ntheta,
             bool triangulate, const std::string& out, const std::string& curvature_csv) {
    const rotw::MomentumFn m = rotw::catalog(rotw::parse_surface_spec(surface));
    curve_args.resample_n = ns;
    const rotw::GeneratrixCurve curve = build_curve(m, curve_args);
    const rotw::RevolutionMesh mesh = rotw::revolve(curve, ntheta);
    if (out.empty()) throw rotw::BadParams("mesh: --out <file.obj> is required");
    rotw::export_obj(mesh, out, triangulate);
    if (!curvature_csv.empty()) {
        const rotw::MeshCurvature mc = rotw::mesh_principal_curvatures(mesh);
        Output target(curvature_csv);
        rotw::write_mesh_curvature_csv(target.stream(), mesh, mc);
    }
    return 0;
}

int cmd_verify(const std::string& surface) {
    const rotw::MomentumFn m = rotw::catalog(rotw::parse_surface_spec(surface));
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& name, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    };

    const auto records = rotw::wdiagram(m, 100);

    bool identities = true;
    for (const auto& r : records)
        identities = identities && (2 * r.H == r.k_m + r.k_p) && (r.K_G == r.k_m * r.k_p);
    check(identities, "curvature-identities", "2H = k_m + k_p and K_G = k_m * k_p at 100 samples");

    double worst_fd = 0;
    for (const auto& r : records) {
        const double fd = rotw::fd_derivative(m.eval, r.x);
        worst_fd = std::max(worst_fd, std::fabs(fd - r.k_m) / (1 + std::fabs(r.k_m)));
    }
    check(worst_fd <= 1e-6, "derivative",
          "analytic K' vs central difference, worst " + std::to_string(worst_fd));

    const rotw::Interval w = rotw::wdiagram_window(m);
    const double span = std::min(5.0, 2 * (w.hi - w.lo));
    rotw::GeneratrixCurve curve = rotw::reconstruct(m, w.midpoint(), 0.0, 1, span);
    double drift = 0;
    for (const auto& st : curve.samples())
        drift = std::max(drift, std::fabs(std::sin(st.theta) - m.eval(st.x)));
    check(drift <= 1e-8, "first-integral", "max |sin(theta) - K(x)| = " + std::to_string(drift));

    const rotw::GeneratrixCurve dense = rotw::resample(curve, 10001);
    double worst_speed = 0;
    for (std::size_t i = 0; i + 1 < dense.samples().size(); ++i) {
        const auto& p = dense.samples()[i];
        const auto& q = dense.samples()[i + 1];
        const double chord = std::hypot(q.x - p.x, q.z - p.z) / (q.s - p.s);
        worst_speed = std::max(worst_speed, std::fabs(1 - chord));
    }
    check(worst_speed <= 1e-6, "unit-speed",
          "max |1 - chord/ds| = " + std::to_string(worst_speed));

    double worst_kappa = 0;
    for (const auto& [xm, kappa] : rotw::discrete_curvature(dense)) {
        double expected;
        try {
            expected = m.deriv(xm);
        } catch (const rotw::Error&) {
            continue;
        }
        if (!std::isfinite(expected)) continue;
        worst_kappa =
            std::max(worst_kappa, std::fabs(kappa - expected) / (1 + std::fabs(expected)));
    }
    check(worst_kappa <= 1e-4, "discrete-curvature",
          "delta(theta)/delta(s) vs K', worst relative " + std::to_string(worst_kappa));

    try {
        const rotw::GeneratrixCurve rows = rotw::resample(curve, 100);
        const rotw::RevolutionMesh mesh = rotw::revolve(rows, 64);
        const rotw::MeshCurvature mc = rotw::mesh_principal_curvatures(mesh);
        double x_max = 0;
        for (const auto& st : rows.samples()) x_max = std::max(x_max, st.x);
        double scale = 0;
        for (std::size_t i = 0; i < mesh.rows(); ++i) {
            const double x = rows.samples()[i].x;
            if (x < 1e-3 * x_max) continue;
            const auto rec = rotw::curvatures(m, std::clamp(x, m.domain.lo * (1 + 1e-12),
                                                            m.domain.hi * (1 - 1e-12)));
            scale = std::max({scale, std::fabs(rec.k_m), std::fabs(rec.k_p)});
        }
        double worst_mesh = 0;
        for (std::size_t i = 1; i + 1 < mesh.rows(); ++i) {
            const double x = rows.samples()[i].x;
            if (x < 1e-3 * x_max) continue;
            rotw::CurvatureRecord rec;
            try {
                rec = rotw::curvatures(m, x);
            } catch (const rotw::OutOfDomain&) {
                continue;
            }
            const double denom = std::max(scale, 1e-8);
            worst_mesh = std::max(worst_mesh, std::fabs(mc.k_m(i, 0) - rec.k_m) / denom);
            worst_mesh = std::max(worst_mesh, std::fabs(mc.k_p(i, 0) - rec.k_p) / denom);
        }
        check(worst_mesh <= 1e-2, "mesh-oracle",
              "100x64 grid curvature estimates, worst relative " + std::to_string(worst_mesh));
    } catch (const rotw::AxisTouch&) {
        check(true, "mesh-oracle", "skipped (generatrix reaches the axis)");
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotational surfaces from the generatrix momentum K(x)"};
    app.require_subcommand(1);

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "list the built-in momenta");
    bool catalog_json = false;
    catalog_cmd->add_flag("--json", catalog_json, "machine-readable listing");

    // reconstruct
    auto* rec_cmd = app.add_subcommand("reconstruct", "integrate a generatrix curve");
    std::string rec_surface, rec_out;
    bool rec_json = false;
    CurveArgs rec_args;
    rec_cmd->add_option("--surface", rec_surface, "catalog surface, name:key=val,...")
        ->required();
    add_curve_options(rec_cmd, rec_args);
    rec_cmd->add_option("--out", rec_out, "CSV output path (default stdout)");
    rec_cmd->add_flag("--json", rec_json, "print a JSON report before the CSV");

    // wdiagram
    auto* wd_cmd = app.add_subcommand("wdiagram", "sample the curvature diagram");
    std::string wd_surface, wd_out;
    int wd_n = 200;
    wd_cmd->add_option("--surface", wd_surface)->required();
    wd_cmd->add_option("-n,--n", wd_n, "number of samples")->check(CLI::Range(2, 1000000));
    wd_cmd->add_option("--out", wd_out, "CSV output path (default stdout)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve a Weingarten relation for the momentum");
    std::string solve_relation, solve_out;
    double solve_c = 0.0, solve_acoef = 1.0;
    int solve_sign = 1, solve_table = 0;
    bool solve_sphere = false, solve_rec = false, solve_json = false;
    CurveArgs solve_args;
    solve_cmd
        ->add_option("relation", solve_relation,
                     "linear:p=..,q=.. | special:a=..,b=..,c=..,d=.. | cubic:mu=.. | "
                     "hyperbola:mu=.. | const:meridian=.. | const:parallel=..")
        ->required();
    solve_cmd->add_option("--c", solve_c, "integration constant");
    solve_cmd->add_option("--a-coef", solve_acoef, "hyperbola integration constant a > 0");
    solve_cmd->add_option("--sign", solve_sign, "branch sign for special relations")
        ->check(CLI::IsMember({1, -1}));
    solve_cmd->add_flag("--sphere-branch", solve_sphere,
                        "constant branch of the hyperbola relation");
    solve_cmd->add_option("--table", solve_table, "write an x,K,K' table with this many rows");
    solve_cmd->add_flag("--reconstruct", solve_rec, "write the generatrix CSV");
    add_curve_options(solve_cmd, solve_args);
    solve_cmd->add_option("--out", solve_out, "output path (default stdout)");
    solve_cmd->add_flag("--json", solve_json, "machine-readable report");

    // prescribe
    auto* pre_cmd = app.add_subcommand("prescribe", "build a momentum from prescribed H or K_G");
    std::string pre_h, pre_kg, pre_out;
    double pre_c = 0.0, pre_base = std::numeric_limits<double>::quiet_NaN();
    int pre_sign = 1, pre_graph = 0;
    bool pre_rec = false, pre_json = false;
    CurveArgs pre_args;
    pre_cmd->add_option("--H", pre_h, "mean curvature, const:<v> or poly:<c0,c1,...>");
    pre_cmd->add_option("--KG", pre_kg, "Gauss curvature, const:<v> or poly:<c0,c1,...>");
    pre_cmd->add_option("--c", pre_c, "quadrature constant (the family parameter)");
    pre_cmd->add_option("--base-x", pre_base, "lower quadrature limit");
    pre_cmd->add_option("--sign", pre_sign, "K sign branch for --KG")
        ->check(CLI::IsMember({1, -1}));
    pre_cmd->add_flag("--reconstruct", pre_rec, "write the generatrix CSV");
    pre_cmd->add_option("--graph", pre_graph, "write an x,z graph with this many rows");
    add_curve_options(pre_cmd, pre_args);
    pre_cmd->add_option("--out", pre_out, "output path (default stdout)");
    pre_cmd->add_flag("--json", pre_json, "machine-readable report");

    // mesh
    auto* mesh_cmd = app.add_subcommand("mesh", "revolve a generatrix into a Wavefront OBJ mesh");
    std::string mesh_surface, mesh_out, mesh_curv_csv;
    int mesh_ns = 100, mesh_ntheta = 64;
    bool mesh_tri = false;
    CurveArgs mesh_args;
    mesh_args.span = 6.0;
    mesh_cmd->add_option("--surface", mesh_surface)->required();
    mesh_cmd->add_option("--ns", mesh_ns, "arc samples (rows)")->check(CLI::Range(5, 100000));
    mesh_cmd->add_option("--ntheta", mesh_ntheta, "angular samples (columns)")
        ->check(CLI::Range(8, 100000));
    add_curve_options(mesh_cmd, mesh_args);
    mesh_cmd->add_flag("--triangulate", mesh_tri, "emit triangles instead of quads");
    mesh_cmd->add_option("--out", mesh_out, "OBJ output path")->required();
    mesh_cmd->add_option("--curvature-csv", mesh_curv_csv,
                         "also dump per-vertex curvature estimates");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run the oracle suite on a catalog surface");
    std::string ver_surface;
    ver_cmd->add_option("--surface", ver_surface)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (catalog_cmd->parsed()) return cmd_catalog(catalog_json);
        if (rec_cmd->parsed()) return cmd_reconstruct(rec_surface, rec_args, rec_out, rec_json);
        if (wd_cmd->parsed()) return cmd_wdiagram(wd_surface, wd_n, wd_out);
        if (solve_cmd->parsed())
            return cmd_solve(solve_relation, solve_c, solve_acoef, solve_sign, solve_sphere,
                             solve_table, solve_args, solve_rec, solve_out, solve_json);
        if (pre_cmd->parsed())
            return cmd_prescribe(pre_h, pre_kg, pre_c, pre_base, pre_sign, pre_args, pre_rec,
                                 pre_graph, pre_out, pre_json);
        if (mesh_cmd->parsed())
            return cmd_mesh(mesh_surface, mesh_args, mesh_ns, mesh_ntheta, mesh_tri, mesh_out,
                            mesh_curv_csv);
        if (ver_cmd->parsed()) return cmd_verify(ver_surface);
    } catch (const rotw::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rotw::NonFinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rotw::EventStall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rotw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
