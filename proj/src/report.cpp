#include "ceig/harness.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "ceig/error.hpp"

namespace ceig {

namespace {

constexpr const char* kCsvHeader = "material,epsilon,trial,true_lambda,lo21,hi21,lo24,hi24,lo25,hi25,nested,contained";

std::string fixed8(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quote");
    out.push_back(std::move(cur));
    return out;
}

std::string epsilon_label(double e)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", e);
    return buf;
}

} // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out)
{
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.material) << ',' << fixed8(r.epsilon) << ',' << r.trial << ',' << fixed8(r.true_lambda)
            << ',' << fixed8(r.lo21) << ',' << fixed8(r.hi21) << ',' << fixed8(r.lo24) << ',' << fixed8(r.hi24)
            << ',' << fixed8(r.lo25) << ',' << fixed8(r.hi25) << ',' << (r.nested ? "true" : "false") << ','
            << (r.contained ? "true" : "false") << '\n';
    }
}

std::vector<ResultRow> parse_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line, line_no);
        if (f.size() != 12) throw ParseError(line_no, "expected 12 fields");
        auto num = [&](const std::string& s) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || s.empty()) throw ParseError(line_no, "bad number '" + s + "'");
            return v;
        };
        auto flag = [&](const std::string& s) {
            if (s == "true") return true;
            if (s == "false") return false;
            throw ParseError(line_no, "bad flag '" + s + "'");
        };
        ResultRow r;
        r.material = f[0];
        r.epsilon = num(f[1]);
        r.trial = static_cast<int>(num(f[2]));
        r.true_lambda = num(f[3]);
        r.lo21 = num(f[4]);
        r.hi21 = num(f[5]);
        r.lo24 = num(f[6]);
        r.hi24 = num(f[7]);
        r.lo25 = num(f[8]);
        r.hi25 = num(f[9]);
        r.nested = flag(f[10]);
        r.contained = flag(f[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_markdown(const std::vector<ResultRow>& rows, std::ostream& out)
{
    out << "# Perturbation bounds for the largest C-eigenvalue\n\n";
    if (rows.empty()) {
        out << "No results.\n";
        return;
    }

    // Tables keyed by (material, trial) in first-appearance order.
    std::vector<std::pair<std::string, int>> keys;
    std::map<std::pair<std::string, int>, std::vector<const ResultRow*>> groups;
    bool multi_trial = false;
    for (const auto& r : rows) {
        auto key = std::make_pair(r.material, r.trial);
        if (!groups.contains(key)) keys.push_back(key);
        groups[key].push_back(&r);
        multi_trial = multi_trial || r.trial != 0;
    }

    for (const auto& key : keys) {
        const auto& g = groups[key];
        out << "## " << key.first;
        if (multi_trial) out << " (trial " << key.second << ")";
        out << "\n\n";

        auto header = [&] {
            out << "| epsilon |";
            for (const auto* r : g) out << ' ' << epsilon_label(r->epsilon) << " |";
            out << "\n|---|";
            for (std::size_t i = 0; i < g.size(); ++i) out << "---|";
            out << '\n';
        };
        auto line = [&](const char* label, auto field) {
            out << "| " << label << " |";
            for (const auto* r : g) out << ' ' << fixed8(field(*r)) << " |";
            out << '\n';
        };

        out << "Upper bounds\n\n";
        header();
        line("TRUE", [](const ResultRow& r) { return r.true_lambda; });
        line("additive", [](const ResultRow& r) { return r.hi21; });
        line("spectral", [](const ResultRow& r) { return r.hi24; });
        line("quadratic", [](const ResultRow& r) { return r.hi25; });
        out << "\nLower bounds\n\n";
        header();
        line("TRUE", [](const ResultRow& r) { return r.true_lambda; });
        line("additive", [](const ResultRow& r) { return r.lo21; });
        line("spectral", [](const ResultRow& r) { return r.lo24; });
        line("quadratic", [](const ResultRow& r) { return r.lo25; });
        out << '\n';
    }
}

} // namespace ceig
