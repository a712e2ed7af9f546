#include "cuspfold/bifurcation.hpp"
#include "cuspfold/dynamics.hpp"
#include "cuspfold/error.hpp"
#include "cuspfold/render.hpp"
#include "cuspfold/signature.hpp"
#include "cuspfold/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace cuspfold;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

Point3 point_of(const std::vector<double>& v)
{
    return {v.at(0), v.at(1), v.at(2)};
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

void emit(const std::string& out_path, const std::string& content)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        write_file(out_path, content);
    }
}

std::string signature_cell(const CuspFoldSignature& s, const char* key)
{
    json j = s;
    return j.at(key).get<std::string>();
}

int run_catalog(const std::string& format)
{
    if (format == "json") {
        json rows = json::array();
        for (const SignVector& sv : all_sign_vectors()) {
            rows.push_back({{"sv", sv.str()}, {"type", sv.type_label()}, {"signature", signature_of_sign_vector(sv)}});
        }
        std::cout << rows.dump(2) << "\n";
        return kExitOk;
    }
    std::printf("%-6s %-9s %-13s %-15s %-13s %-12s %-13s\n", "sv", "type", "cusp_arrival", "visible_branch",
                "zplus_layout", "sminus_type", "zminus_layout");
    for (const SignVector& sv : all_sign_vectors()) {
        const CuspFoldSignature s = signature_of_sign_vector(sv);
        std::printf("%-6s %-9s %-13s %-15s %-13s %-12s %-13s\n", sv.str().c_str(), sv.type_label().c_str(),
                    signature_cell(s, "cusp_arrival").c_str(), signature_cell(s, "visible_branch").c_str(),
                    signature_cell(s, "zplus_layout").c_str(), signature_cell(s, "sminus_type").c_str(),
                    signature_cell(s, "zminus_layout").c_str());
    }
    return kExitOk;
}

struct SimulateArgs {
    std::string sv;
    std::string psvf;
    std::vector<double> q0{0.0, -1.0, 0.0};
    double lambda = 0.0;
    double t_max = 10.0;
    double step = 1e-3;
    double box = 2.0;
    int max_events = 64;
    bool rk4 = false;
    std::string escaping = "stop";
    std::string format = "csv";
    std::string out;
};

int run_simulate(const SimulateArgs& a)
{
    if (a.sv.empty() == a.psvf.empty()) throw CLI::ValidationError("simulate", "give exactly one of --sv or --psvf");
    std::optional<ExactHint> hint;
    PSVF z;
    if (!a.sv.empty()) {
        const SignVector sv = SignVector::parse(a.sv);
        z = unfolded_form(sv, a.lambda);
        if (!a.rk4) hint = ExactHint{sv, a.lambda};
    } else {
        z = load_psvf(a.psvf);
    }
    IntegratorOptions opts;
    opts.t_max = a.t_max;
    opts.step = a.step;
    opts.max_events = a.max_events;
    opts.box = WorkingBox({0, 0, 0}, a.box, a.box, a.box);
    if (a.escaping != "stop") opts.escaping_choice = a.escaping == "lower" ? Regime::Lower : Regime::Upper;
    const Trajectory traj = integrate(z, point_of(a.q0), opts, hint);

    std::fprintf(stderr, "termination: %s, %zu events, %zu segments\n",
                 std::string(termination_name(traj.termination)).c_str(), traj.events.size(), traj.segments.size());
    if (!a.out.empty() && a.out != "-") {
        // Both artifacts: <out>.csv and <out>.events.json.
        write_file(a.out + ".csv", export_trajectory_csv(traj));
        write_file(a.out + ".events.json", export_events_json(traj));
        return kExitOk;
    }
    std::cout << (a.format == "json" ? export_events_json(traj) + "\n" : export_trajectory_csv(traj));
    return kExitOk;
}

int run_unfold(const std::string& sv_text, std::optional<double> lambda, double epsilon, int n, const std::string& out)
{
    const SignVector sv = SignVector::parse(sv_text);
    json j;
    if (lambda) {
        j = {{"sv", sv.str()}, {"type_label", sv.type_label()}, {"record", unfold_record(sv, *lambda)}};
    } else {
        j = scan(sv, epsilon, n);
    }
    emit(out, j.dump(2) + "\n");
    return kExitOk;
}

ShowFlags parse_show(const std::vector<std::string>& items)
{
    ShowFlags f = ShowFlags::none();
    for (const std::string& s : items) {
        if (s == "regions") f.regions = true;
        else if (s == "lines") f.tangency_lines = true;
        else if (s == "arcs") f.fold_arcs = true;
        else if (s == "orbit") f.cusp_orbit = true;
        else if (s == "trajectories") f.sample_trajectories = true;
        else if (s == "all") f = ShowFlags::all();
        else if (s == "none") f = ShowFlags::none();
        else throw CLI::ValidationError("--show", "unknown layer '" + s + "'");
    }
    return f;
}

int run_verify(std::uint64_t seed)
{
    const VerifyReport r = run_verification(seed);
    std::cout << r.text();
    return r.ok ? kExitOk : kExitVerify;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cusp-fold singularities of piecewise-smooth vector fields in 3D"};
    app.require_subcommand(1);

    std::string format = "table";
    auto* catalog = app.add_subcommand("catalog", "List the 32 canonical forms with their signatures");
    catalog->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    std::string classify_sv;
    auto* classify = app.add_subcommand("classify", "Print the signature of a canonical form as JSON");
    classify->add_option("sv", classify_sv, "sign vector, e.g. +++++ or (+++,++)")->required();

    std::string sig_file;
    std::vector<double> sig_point{0.0, 0.0, 0.0};
    double sig_radius = 0.1;
    auto* signature = app.add_subcommand("signature", "Extract the signature of a field from a JSON file");
    signature->add_option("--psvf", sig_file, "PSVF JSON file")->required()->check(CLI::ExistingFile);
    signature->add_option("--point", sig_point, "singular point x,y,z")->expected(3)->delimiter(',');
    signature->add_option("--radius", sig_radius, "probe radius")->check(CLI::PositiveNumber);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory through the switching plane");
    simulate->add_option("--sv", sim.sv, "canonical form (uses the unfolding with --lambda)");
    simulate->add_option("--psvf", sim.psvf, "PSVF JSON file")->check(CLI::ExistingFile);
    simulate->add_option("--q0", sim.q0, "start point x,y,z")->expected(3)->delimiter(',');
    simulate->add_option("--lambda", sim.lambda, "unfolding parameter");
    simulate->add_option("--t-max", sim.t_max, "time horizon")->check(CLI::PositiveNumber);
    simulate->add_option("--step", sim.step, "sample / RK4 step")->check(CLI::PositiveNumber);
    simulate->add_option("--box", sim.box, "half-width of the working box")->check(CLI::PositiveNumber);
    simulate->add_option("--max-events", sim.max_events, "event budget")->check(CLI::PositiveNumber);
    simulate->add_flag("--rk4", sim.rk4, "use RK4 even for canonical forms");
    simulate->add_option("--escaping", sim.escaping, "zone taken from an escaping start")
        ->check(CLI::IsMember({"stop", "upper", "lower"}));
    simulate->add_option("--format", sim.format, "stdout format: csv samples or json events")
        ->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--out", sim.out, "write <out>.csv and <out>.events.json");

    std::string unfold_sv, unfold_out;
    std::optional<double> unfold_lambda;
    double unfold_eps = kDefaultScanEpsilon;
    int unfold_n = kDefaultScanPoints;
    auto* unfold = app.add_subcommand("unfold", "Unfolding record at one lambda, or a scan over [-eps, eps]");
    unfold->add_option("--sv", unfold_sv, "canonical form")->required();
    auto* lam_opt = unfold->add_option("--lambda", unfold_lambda, "single parameter value");
    unfold->add_option("--epsilon", unfold_eps, "scan half-width")->excludes(lam_opt);
    unfold->add_option("--n", unfold_n, "number of scan points (odd)")->excludes(lam_opt);
    unfold->add_option("--out", unfold_out, "output file (default stdout)");

    std::string por_sv = "+++++", por_out, por_format = "svg";
    double por_lambda = 0.0, por_box = 1.0;
    int por_pixels = 480;
    std::vector<std::string> por_show{"regions", "lines"};
    auto* portrait = app.add_subcommand("portrait", "Draw the switching plane as SVG");
    portrait->add_option("--sv", por_sv, "canonical form");
    portrait->add_option("--lambda", por_lambda, "unfolding parameter");
    portrait->add_option("--box", por_box, "half-width of the drawn square")->check(CLI::PositiveNumber);
    portrait->add_option("--pixels", por_pixels, "drawing size")->check(CLI::Range(16, 8192));
    portrait->add_option("--show", por_show, "layers: regions,lines,arcs,orbit,trajectories,all,none")
        ->delimiter(',');
    portrait->add_option("--format", por_format, "output format")->check(CLI::IsMember({"svg"}));
    portrait->add_option("--out", por_out, "output file (default stdout)");

    std::uint64_t seed = kDefaultVerifySeed;
    auto* verify = app.add_subcommand("verify", "Run the self-verification suite");
    verify->add_option("--seed", seed, "seed for sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*catalog) return run_catalog(format);
        if (*classify) {
            json j = signature_of_sign_vector(SignVector::parse(classify_sv));
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (*signature) {
            json j = signature_of_psvf(load_psvf(sig_file), point_of(sig_point), sig_radius);
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (*simulate) return run_simulate(sim);
        if (*unfold) return run_unfold(unfold_sv, unfold_lambda, unfold_eps, unfold_n, unfold_out);
        if (*portrait) {
            DiagramSpec spec;
            spec.sv = SignVector::parse(por_sv);
            spec.lambda = por_lambda;
            spec.box = WorkingBox({0, 0, 0}, por_box, por_box, por_box);
            spec.show = parse_show(por_show);
            spec.pixels = por_pixels;
            emit(por_out, draw_sigma_diagram(spec));
            return kExitOk;
        }
        if (*verify) return run_verify(seed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
