#pragma once

#include "conical/metric.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace conical::cli {

enum ExitCode { exit_ok = 0, exit_input = 2, exit_domain = 3, exit_verify = 4 };

enum class Format { Json, Csv, Table };

struct CliConfig {
    Orders orders;
    Format format = Format::Json;
    int precision = 15;  // significant digits, 6..17
    unsigned seed = 20240917;
};

// "a+bi", "a-bi", "a", "bi"; no spaces
std::optional<cplx> parse_complex(const std::string& s);

// x rounded to `digits` significant digits
double round_sig(double x, int digits);

// tty selects the default format: table on a terminal, JSON otherwise
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool tty);

} // namespace conical::cli
