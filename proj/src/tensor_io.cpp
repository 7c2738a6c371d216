#include "ceig/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ceig/error.hpp"

namespace ceig {

namespace {

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out)
{
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

MaterialRecord parse_tensor_text(std::string_view text, std::string_view fallback_name)
{
    std::size_t n = 0;
    bool have_header = false;
    SymmetryMode mode = SymmetryMode::auto_symmetrize;
    std::string name;
    std::vector<double> raw;
    std::vector<char> given;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;

        if (!have_header) {
            if (tok[0] != "n" || tok.size() < 2 || tok.size() > 3) {
                throw ParseError(line_no, "expected header 'n <dim> [strict]'");
            }
            if (!parse_number(tok[1], n) || n == 0) throw ParseError(line_no, "bad dimension '" + std::string(tok[1]) + "'");
            if (tok.size() == 3) {
                if (tok[2] != "strict") throw ParseError(line_no, "unknown header flag '" + std::string(tok[2]) + "'");
                mode = SymmetryMode::strict;
            }
            raw.assign(n * n * n, 0.0);
            given.assign(n * n * n, 0);
            have_header = true;
            continue;
        }

        if (tok[0] == "name") {
            if (tok.size() < 2) throw ParseError(line_no, "empty name");
            if (!name.empty()) throw ParseError(line_no, "duplicate name line");
            const std::size_t from = static_cast<std::size_t>(tok[1].data() - line.data());
            const std::size_t to = static_cast<std::size_t>(tok.back().data() - line.data()) + tok.back().size();
            name = std::string(line.substr(from, to - from));
            continue;
        }

        if (tok.size() != 4) throw ParseError(line_no, "expected 'i j k value'");
        std::size_t idx[3];
        for (int d = 0; d < 3; ++d) {
            if (!parse_number(tok[d], idx[d])) {
                throw ParseError(line_no, "bad index '" + std::string(tok[d]) + "'");
            }
            if (idx[d] < 1 || idx[d] > n) {
                throw ParseError(line_no, "index " + std::to_string(idx[d]) + " out of range 1.." + std::to_string(n));
            }
            --idx[d];
        }
        double value = 0.0;
        if (!parse_number(tok[3], value)) throw ParseError(line_no, "bad value '" + std::string(tok[3]) + "'");
        if (!std::isfinite(value)) throw ParseError(line_no, "non-finite value");

        const std::size_t at = (idx[0] * n + idx[1]) * n + idx[2];
        if (given[at]) throw ParseError(line_no, "duplicate entry");
        given[at] = 1;
        raw[at] = value;
    }
    if (!have_header) throw ParseError(line_no, "missing header 'n <dim>'");

    // An entry given in only one (j,k) order stands for both.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t a = (i * n + j) * n + k;
                const std::size_t b = (i * n + k) * n + j;
                if (given[a] && !given[b]) raw[b] = raw[a];
            }

    MaterialRecord rec {name.empty() ? std::string(fallback_name) : name,
                        PiezoTensor::make(n, raw, mode)};
    if (rec.name.empty()) throw ValidationError("material name is empty");
    return rec;
}

MaterialRecord load_material(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_tensor_text(buf.str(), path.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.reason(), path.string());
    }
}

std::vector<MaterialRecord> load_material_dir(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) throw ValidationError(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tensor") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<MaterialRecord> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_material(f));
    return out;
}

std::string format_tensor_text(const MaterialRecord& m)
{
    const std::size_t n = m.tensor.dim();
    std::string out = "n " + std::to_string(n) + "\nname " + m.name + "\n";
    char buf[128];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const double v = m.tensor(i, j, k);
                if (v == 0.0) continue;
                std::snprintf(buf, sizeof buf, "%zu %zu %zu %.17g\n", i + 1, j + 1, k + 1, v);
                out += buf;
            }
    return out;
}

} // namespace ceig
