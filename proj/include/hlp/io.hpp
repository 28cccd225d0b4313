#pragma once

// Run configuration (key = value files) and text I/O helpers shared by the
// command-line front end.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hlp/bessel.hpp"
#include "hlp/zeros.hpp"

namespace hlp {

struct RunConfig {
    double eval_tol = 1e-10;      // ht: rows whose error estimate exceeds this are flagged
    double root_tol = 1e-14;      // relative Brent tolerance for transform zeros
    double pfe_tail_tol = 1e-6;   // pfe-verify: acceptance threshold on the residual
    int series_terms = 0;         // ht series truncation (0 = automatic)
    int pfe_terms = 1000;         // default N for pfe-verify / sample-reconstruct
    int zero_count = 100;         // default M for zeros / bessel-zeros / rayleigh
    std::string format = "csv";   // csv | json (svg is implied by region-plot)
    std::string output;           // empty = standard output
    std::uint64_t seed = 20240601;
    int threads = 0;              // 0 = no cap beyond HANKEL_LP_THREADS
};

// Lines "key = value"; '#' starts a comment; blank lines ignored.  Unknown
// keys and invalid values throw DomainError naming the line.
RunConfig parse_config(std::istream& in, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);
void validate(const RunConfig& c);

// "x", "x+yi", "x-yi", "yi" (also with j).
cplx parse_complex(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

// Inverse of zeros_to_csv.
ZeroList read_zero_list(std::istream& in);

// Writes text to path, or to out when path is empty or "-".
void write_output(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace hlp
