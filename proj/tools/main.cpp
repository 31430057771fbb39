#include <unistd.h>

#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

using padyn::json;
namespace cli = padyn::cli;

namespace {

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

json parse_document(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
    return json::parse(text);
}

// Flags fill in whatever part of the context the document leaves out.
void overlay_ctx(json& doc, const std::optional<int>& p, const std::optional<int>& N, const std::optional<int>& K) {
    if (!p && !N && !K) return;
    if (!doc.is_object()) return;
    json& ctx = doc["ctx"];
    if (!ctx.is_object()) ctx = json::object();
    if (p) ctx["p"] = *p;
    if (N) ctx["N"] = *N;
    if (K) ctx["K"] = *K;
}

int emit(const std::string& text, const std::optional<std::string>& out_path) {
    if (out_path) {
        std::ofstream out(*out_path);
        if (!out) {
            std::cerr << "cannot write " << *out_path << "\n";
            return 1;
        }
        out << text;
        return 0;
    }
    std::cout << text;
    return 0;
}

json error_json(const std::string& message) { return {{"error", {{"code", "malformed_input"}, {"message", message}}}}; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic power series dynamics: polygons, torsion certificates, ramification"};
    std::string command;
    std::string input_path;
    std::optional<int> p, N, K;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> jobs_path, out_path;
    bool compact = false;

    app.add_option("command", command,
                   "polygon | wprep | wideg | linearize | commutant | torsion-check | ramification | order | "
                   "normalizer | lambda-check | gen-pair | validate-pair | zp-iterate");
    app.add_option("input", input_path, "job JSON file ('-' for standard input)");
    app.add_option("--p", p, "prime");
    app.add_option("--N", N, "p-adic precision (digits)");
    app.add_option("--K", K, "series truncation order");
    app.add_option("--seed", seed, "64-bit seed for randomized generators");
    app.add_flag("--json", compact, "compact JSON output");
    app.add_option("--jobs", jobs_path, "JSON array of jobs to run concurrently");
    app.add_option("--out", out_path, "write the report to this file");
    CLI11_PARSE(app, argc, argv);

    if (jobs_path) {
        std::ifstream in(*jobs_path);
        json jobs;
        try {
            if (!in) throw std::runtime_error("cannot read " + *jobs_path);
            jobs = json::parse(slurp(in));
            if (!jobs.is_array()) throw std::runtime_error("--jobs expects a JSON array");
        } catch (const std::exception& e) {
            emit((compact ? error_json(e.what()).dump() : error_json(e.what()).dump(2)) + "\n", out_path);
            return 1;
        }
        std::vector<std::future<cli::JobResult>> pending;
        for (auto doc : jobs) {
            overlay_ctx(doc, p, N, K);
            pending.push_back(std::async(std::launch::async, [doc, seed] {
                cli::JobSpec base;
                base.seed = seed;
                try {
                    return cli::run(cli::job_from_json(doc, base));
                } catch (const padyn::Error& e) {
                    return cli::JobResult{1, {{"error", {{"code", e.code()}, {"message", e.what()}}}}};
                }
            }));
        }
        json results = json::array();
        int worst = 0;
        for (auto& f : pending) {
            const auto r = f.get();
            worst = std::max(worst, r.exit_code);
            results.push_back({{"exit", r.exit_code}, {"report", r.report}});
        }
        const int io = emit((compact ? results.dump() : results.dump(2)) + "\n", out_path);
        return io ? io : worst;
    }

    cli::JobResult result;
    try {
        std::string text;
        if (input_path == "-" || (input_path.empty() && !isatty(STDIN_FILENO))) {
            text = slurp(std::cin);
        } else if (!input_path.empty()) {
            std::ifstream in(input_path);
            if (!in) throw std::runtime_error("cannot read " + input_path);
            text = slurp(in);
        }
        json doc = parse_document(text);
        overlay_ctx(doc, p, N, K);
        cli::JobSpec base;
        base.command = command;
        base.seed = seed;
        result = cli::run(cli::job_from_json(doc, base));
    } catch (const padyn::Error& e) {
        result = {1, {{"error", {{"code", e.code()}, {"message", e.what()}}}}};
    } catch (const std::exception& e) {
        result = {1, error_json(e.what())};
    }
    const std::string text = compact ? result.report.dump() + "\n" : cli::render_text(command, result.report);
    const int io = emit(text, out_path);
    return io ? io : result.exit_code;
}
