// bounds: certified optimal bounds on the difference between the naive and
// canonical heights of an elliptic curve over Q, for points over the
// algebraic closure.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace
{

using namespace hb;
using namespace hb::tools;

struct Options {
    std::string curve_text;
    std::string input_file;
    double eps = 1e-4;
    Format format = Format::text;
    int threads = 1;
    Strategy strategy = Strategy::best_first;
    BoundMode bound_mode = BoundMode::local_certified;
    std::string dump_phi_file;
};

OptimizerConfig make_config(const Options &opt, int workers)
{
    OptimizerConfig cfg;
    cfg.eps = opt.eps;
    cfg.strategy = opt.strategy;
    cfg.bound_mode = opt.bound_mode;
    cfg.workers = workers;
    return cfg;
}

int classify_error(const std::exception &e)
{
    if (dynamic_cast<const singular_curve_error *>(&e)) {
        return exit_singular;
    }
    if (dynamic_cast<const hb::error *>(&e)) {
        return exit_no_convergence; // nonconvergence, pole, boundary, unbounded
    }
    return exit_usage; // parse errors, overflow of the supported range, ...
}

int run_single(const Options &opt)
{
    CurveQ curve;
    try {
        curve = parse_curve(opt.curve_text);
    } catch (const std::exception &e) {
        std::cerr << "bounds: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        CurveAnalysis an = analyze(curve, opt.eps, make_config(opt, opt.threads));
        std::cout << (opt.format == Format::json ? render_json(an) : render_text(an));
        if (opt.format == Format::json) {
            std::cout << "\n";
        }
        if (!opt.dump_phi_file.empty()) {
            std::ofstream out(opt.dump_phi_file);
            if (!out) {
                std::cerr << "bounds: cannot write " << opt.dump_phi_file << "\n";
                return exit_usage;
            }
            out << render_phi_grid_csv(an.place.ctx, 256);
        }
        return exit_code_for(an);
    } catch (const std::exception &e) {
        std::cerr << "bounds: " << e.what() << "\n";
        return classify_error(e);
    }
}

struct BatchEntry {
    std::string line;
    std::string rendered;
    int code = exit_ok;
    bool is_row = false; // success rows get table formatting in text mode
};

void process_entry(BatchEntry &entry, const Options &opt)
{
    try {
        CurveQ curve = parse_curve(entry.line);
        CurveAnalysis an = analyze(curve, opt.eps, make_config(opt, 1));
        entry.rendered = opt.format == Format::json ? render_json(an) : render_table_row(entry.line, an);
        entry.code = exit_code_for(an);
        entry.is_row = true;
    } catch (const std::exception &e) {
        entry.rendered = opt.format == Format::json ? render_error_json(entry.line, e.what())
                                                    : render_error_text(entry.line, e.what());
        entry.code = classify_error(e);
    }
}

int run_batch(const Options &opt)
{
    std::ifstream in(opt.input_file);
    if (!in) {
        std::cerr << "bounds: cannot read " << opt.input_file << "\n";
        return exit_usage;
    }
    std::vector<BatchEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') {
            continue;
        }
        while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t' || trimmed.back() == '\r')) {
            trimmed.pop_back();
        }
        entries.push_back({trimmed, "", exit_ok, false});
    }

    const int workers = std::max(1, std::min<int>(opt.threads, static_cast<int>(entries.size())));
    if (workers <= 1) {
        for (auto &entry : entries) {
            process_entry(entry, opt);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&]() {
            while (true) {
                std::size_t k = next.fetch_add(1);
                if (k >= entries.size()) {
                    return;
                }
                process_entry(entries[k], opt);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(drain);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    // Output order matches input order regardless of completion order.
    int code = exit_ok;
    if (opt.format == Format::text) {
        bool any_row = false;
        for (const auto &entry : entries) {
            any_row = any_row || entry.is_row;
        }
        if (any_row) {
            std::cout << render_table_header() << "\n";
        }
    }
    for (const auto &entry : entries) {
        std::cout << entry.rendered << "\n";
        code = std::max(code, entry.code);
    }
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    Options opt;
    CLI::App app{"certified sup/inf bounds for the Weil minus Neron-Tate height difference"};
    auto *curve_opt = app.add_option("--curve", opt.curve_text, "curve as \"a1,a2,a3,a4,a6\"");
    auto *input_opt = app.add_option("--input", opt.input_file, "file with one curve per line");
    curve_opt->excludes(input_opt);
    input_opt->excludes(curve_opt);
    app.add_option("--eps", opt.eps, "certificate gap for both extrema")->default_val(1e-4);
    std::string format_name = "text";
    app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", opt.threads, "worker threads (1 = deterministic)")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    std::string strategy_name = "best-first";
    app.add_option("--strategy", strategy_name, "region queue order")
        ->check(CLI::IsMember({"best-first", "paper-order"}));
    std::string bound_name = "local";
    app.add_option("--bound-mode", bound_name, "derivative bound per region")
        ->check(CLI::IsMember({"global", "local"}));
    app.add_option("--dump-phi", opt.dump_phi_file, "write a CSV grid sampling of phi (single mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return hb::tools::exit_usage;
    }

    opt.format = format_name == "json" ? Format::json : Format::text;
    opt.strategy = strategy_name == "paper-order" ? Strategy::paper_order : Strategy::best_first;
    opt.bound_mode = bound_name == "global" ? BoundMode::global : BoundMode::local_certified;
    if (!(opt.eps > 0.0)) {
        std::cerr << "bounds: --eps must be positive\n";
        return hb::tools::exit_usage;
    }

    if (!opt.curve_text.empty()) {
        return run_single(opt);
    }
    if (!opt.input_file.empty()) {
        return run_batch(opt);
    }
    std::cerr << "bounds: give either --curve or --input (see --help)\n";
    return hb::tools::exit_usage;
}
