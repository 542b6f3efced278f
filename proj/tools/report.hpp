#ifndef HEIGHTBOUNDS_TOOLS_REPORT_HPP
#define HEIGHTBOUNDS_TOOLS_REPORT_HPP

#include <string>

#include "heightbounds/assemble.hpp"

namespace hb::tools
{

enum class Format { text, json };

/// Exit codes shared by single and batch runs.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_singular = 2,
    exit_no_convergence = 3,
    exit_budget = 4,
};

std::string render_json(const CurveAnalysis &an);
std::string render_text(const CurveAnalysis &an);

/// One-line rendering for batch text tables.
std::string render_table_row(const std::string &curve_text, const CurveAnalysis &an);
std::string render_table_header();

/// Error records (singular curve, parse failure, ...).
std::string render_error_json(const std::string &input, const std::string &message);
std::string render_error_text(const std::string &input, const std::string &message);

/// CSV sampling of phi over the fundamental cell for external plotting.
std::string render_phi_grid_csv(const PhiContext &ctx, int n);

int exit_code_for(const CurveAnalysis &an);

} // namespace hb::tools

#endif
