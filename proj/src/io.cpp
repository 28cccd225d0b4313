#include "hlp/io.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hlp/error.hpp"

namespace hlp {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
    std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw DomainError(fmt::format("{}: '{}' is not a number", what, text));
    return v;
}

long long to_integer(const std::string& text, const std::string& what) {
    std::string t = trim(text);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw DomainError(fmt::format("{}: '{}' is not an integer", what, text));
    return v;
}

}  // namespace

void validate(const RunConfig& c) {
    if (!(c.eval_tol > 0.0) || !(c.root_tol > 0.0) || !(c.pfe_tail_tol > 0.0))
        throw DomainError("config tolerances must be positive");
    if (c.series_terms < 0) throw DomainError("series_terms must be >= 0 (0 = automatic)");
    if (c.pfe_terms < 1 || c.zero_count < 1) throw DomainError("pfe_terms and zero_count must be >= 1");
    if (c.format != "csv" && c.format != "json") throw DomainError("format must be csv or json");
    if (c.threads < 0) throw DomainError("threads must be >= 0");
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError(fmt::format("{}:{}: expected key = value", origin, lineno));
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        std::string where = fmt::format("{}:{}: {}", origin, lineno, key);
        if (key == "eval_tol") c.eval_tol = to_double(value, where);
        else if (key == "root_tol") c.root_tol = to_double(value, where);
        else if (key == "pfe_tail_tol") c.pfe_tail_tol = to_double(value, where);
        else if (key == "series_terms") c.series_terms = static_cast<int>(to_integer(value, where));
        else if (key == "pfe_terms") c.pfe_terms = static_cast<int>(to_integer(value, where));
        else if (key == "zero_count") c.zero_count = static_cast<int>(to_integer(value, where));
        else if (key == "format") c.format = value;
        else if (key == "output") c.output = value;
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_integer(value, where));
        else if (key == "threads") c.threads = static_cast<int>(to_integer(value, where));
        else throw DomainError(fmt::format("{}:{}: unknown key '{}'", origin, lineno, key));
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(fmt::format("cannot open config file '{}'", path));
    return parse_config(in, path);
}

cplx parse_complex(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (ch != ' ') t += ch;
    if (t.empty()) throw DomainError("empty complex number");
    char last = t.back();
    if (last != 'i' && last != 'j') return {to_double(t[0] == '+' ? t.substr(1) : t, "complex"), 0.0};
    t.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return to_double(s[0] == '+' ? s.substr(1) : s, "complex");
    };
    if (split == std::string::npos) return {0.0, imag(t)};
    std::string re = t.substr(0, split);
    return {to_double(re[0] == '+' ? re.substr(1) : re, "complex"), imag(t.substr(split))};
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item, "list"));
    if (out.empty()) throw DomainError("empty number list");
    return out;
}

ZeroList read_zero_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "m,lo,hi,zeta")
        throw DomainError("zero list must start with header m,lo,hi,zeta");
    ZeroList z;
    int expect = 1;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string f[4];
        for (auto& s : f)
            if (!std::getline(ss, s, ',')) throw DomainError(fmt::format("malformed zero list row '{}'", line));
        if (to_integer(f[0], "m") != expect++) throw DomainError("zero list rows must be numbered 1, 2, ...");
        z.brackets.emplace_back(to_double(f[1], "lo"), to_double(f[2], "hi"));
        z.zeta.push_back(to_double(f[3], "zeta"));
        z.multiplicity.push_back(1);
    }
    return z;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError(fmt::format("cannot write '{}'", path));
    f << text;
}

}  // namespace hlp
