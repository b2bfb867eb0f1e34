#include "semidyn/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "semidyn/errors.hpp"
#include "semidyn/image.hpp"
#include "semidyn/report_io.hpp"
#include "semidyn/scene.hpp"
#include "semidyn/verifier.hpp"

namespace semidyn {

namespace {

double parse_number(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw InvalidArgument(what + ": '" + text + "' is not a finite number");
    return v;
}

Complex parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidArgument("--point expects re,im");
    return {parse_number(text.substr(0, comma), "--point"), parse_number(text.substr(comma + 1), "--point")};
}

Overrides parse_overrides(const std::vector<std::string>& sets) {
    Overrides o;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw InvalidArgument("--set expects key=value, got '" + s + "'");
        o[s.substr(0, eq)] = parse_number(s.substr(eq + 1), "--set " + s.substr(0, eq));
    }
    return o;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot open '" + path + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoFailure("write to '" + path + "' failed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fatou, Julia, escaping and exceptional sets of holomorphic semigroups", "semidyn"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it");

    std::string scene_path, out_path, point, example, suite, format = "text";
    std::vector<std::string> sets;
    int max_len = 0;
    bool count_only = false, list = false;

    auto* render = app.add_subcommand("render", "Classify the scene's region and write a PPM image");
    render->add_option("--scene", scene_path, "Scene JSON file")->required();
    render->add_option("--out", out_path, "Output .ppm path")->required();

    auto* classify = app.add_subcommand("classify", "Classify a single point");
    classify->add_option("--scene", scene_path, "Scene JSON file")->required();
    classify->add_option("--point", point, "Point as re,im")->required();

    auto* verify = app.add_subcommand("verify", "Run built-in theorem and example checks");
    auto* ex_opt = verify->add_option("--example", example, "Example id");
    verify->add_option("--set", sets, "Override key=value (repeatable)")->needs(ex_opt);
    auto* suite_opt = verify->add_option("--suite", suite, "Run every example ('all')")->check(CLI::IsMember({"all"}));
    auto* list_opt = verify->add_flag("--list", list, "List the registered examples");
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", out_path, "Also write the reports to this file");
    ex_opt->excludes(suite_opt)->excludes(list_opt);
    suite_opt->excludes(list_opt);

    auto* sample = app.add_subcommand("sample", "Backward-orbit point cloud, one 're im' pair per line");
    sample->add_option("--scene", scene_path, "Scene JSON file with a sample block")->required();
    sample->add_option("--out", out_path, "Output text file")->required();

    auto* words = app.add_subcommand("words", "List the words of length <= L");
    words->add_option("--scene", scene_path, "Scene JSON file")->required();
    words->add_option("--max-len", max_len, "Maximum word length")->required()->check(CLI::Range(1, 64));
    words->add_flag("--count", count_only, "Print only the number of words");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "semidyn: " << e.what() << "\n";
        return kExitUsage;
    }
    const GridOptions opts{threads};

    try {
        if (render->parsed()) {
            const Scene s = load_scene(scene_path);
            const GridClassification g = compute_scene_grid(s, opts);
            emit_image(g, palette_by_name(s.palette), out_path);
            out << "mode " << to_string(s.mode) << "\n";
            for (auto v : {Verdict::Escaping, Verdict::NonEscaping, Verdict::FatouLike, Verdict::JuliaLike,
                           Verdict::Undetermined})
                out << "pixels " << to_string(v) << ' ' << g.count(v) << "\n";
            out << "image " << out_path << "\n";
            return kExitOk;
        }
        if (classify->parsed()) {
            const Scene s = load_scene(scene_path);
            const Complex z = parse_point(point);
            const Semigroup sg = s.semigroup();
            const bool escaping = s.mode == SceneMode::Escaping || s.mode == SceneMode::JuliaBoundary;
            out << (escaping ? "classifier escaping\n" : "classifier fatou-julia\n")
                << verdict_to_text(escaping ? classify_escaping(sg, z, s.params) : classify_fatou_julia(sg, z, s.params));
            return kExitOk;
        }
        if (verify->parsed()) {
            if (list) {
                for (const auto& e : known_examples())
                    out << e.id << (e.implemented ? "" : " (not implemented)") << "  " << e.summary << "\n";
                return kExitOk;
            }
            if (example.empty() && suite.empty()) {
                err << "semidyn: verify needs --example, --suite all or --list\n";
                return kExitUsage;
            }
            std::vector<Report> reports;
            if (!example.empty())
                reports.push_back(verify_known_example(example, parse_overrides(sets), opts));
            else
                reports = verify_suite(opts);
            std::string text;
            if (format == "json") {
                text = reports_to_json(reports);
            } else {
                for (const auto& r : reports) text += report_to_text(r) + "\n";
            }
            out << text;
            if (!out_path.empty()) write_file(out_path, text);
            for (const auto& r : reports)
                if (!r.passed()) return kExitFailed;
            return kExitOk;
        }
        if (sample->parsed()) {
            const Scene s = load_scene(scene_path);
            if (!s.sample) throw InvalidArgument("scene has no sample block");
            const auto cloud =
                backward_orbit_sample(s.semigroup(), s.sample->z0, s.sample->n_points, s.sample->burn_in, s.params);
            std::string text;
            for (const auto& z : cloud.points) text += format_double(z.real()) + " " + format_double(z.imag()) + "\n";
            write_file(out_path, text);
            out << "points " << cloud.points.size() << "\n"
                << "restarts " << cloud.restarts << "\n"
                << "max_relative_residual " << format_double(cloud.max_relative_residual) << "\n";
            return kExitOk;
        }
        if (words->parsed()) {
            const Scene s = load_scene(scene_path);
            const Semigroup sg = s.semigroup();
            if (count_only) {
                out << word_count(sg.size(), max_len) << "\n";
                return kExitOk;
            }
            for (const auto& w : enumerate_words(sg, max_len)) out << w.to_string() << "\n";
            return kExitOk;
        }
    } catch (const NumericError& e) {
        err << "semidyn: numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "semidyn: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace semidyn
