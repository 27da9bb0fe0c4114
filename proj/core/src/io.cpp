#include "qw/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qw::io {

namespace {

std::vector<std::string> split_line(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw CsvError(std::string("bad numeric field for ") + what + ": '" + s + "'");
    return v;
}

long parse_long(const std::string& s, const char* what) {
    long v = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw CsvError(std::string("bad integer field for ") + what + ": '" + s + "'");
    return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
    }
    if (lines.empty()) throw CsvError("empty file: " + path.string());
    return lines;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string distributions_csv_long(const RealMatrix& pbar) {
    std::string out = "t,x,p\n";
    out.reserve(pbar.rows * pbar.cols * 24);
    for (std::size_t t = 0; t < pbar.rows; ++t) {
        for (std::size_t x = 0; x < pbar.cols; ++x) {
            out += std::to_string(t);
            out += ',';
            out += std::to_string(x);
            out += ',';
            out += format_double(pbar(t, x));
            out += '\n';
        }
    }
    return out;
}

std::string distributions_csv_wide(const RealMatrix& pbar) {
    std::string out = "t";
    for (std::size_t x = 0; x < pbar.cols; ++x) {
        out += ",x";
        out += std::to_string(x);
    }
    out += '\n';
    for (std::size_t t = 0; t < pbar.rows; ++t) {
        out += std::to_string(t);
        for (std::size_t x = 0; x < pbar.cols; ++x) {
            out += ',';
            out += format_double(pbar(t, x));
        }
        out += '\n';
    }
    return out;
}

std::string moments_csv(const MomentSeries& series) {
    std::string out = "t,mean_displacement,variance\n";
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        out += std::to_string(series.t[i]);
        out += ',';
        out += format_double(series.mean_displacement[i]);
        out += ',';
        out += format_double(series.variance[i]);
        out += '\n';
    }
    return out;
}

RealMatrix read_distributions_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    const auto header = split_line(lines[0]);

    if (header.size() == 3 && header[0] == "t" && header[1] == "x" && header[2] == "p") {
        struct Row {
            long t, x;
            double p;
        };
        std::vector<Row> rows;
        rows.reserve(lines.size() - 1);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_line(lines[i]);
            if (f.size() != 3) throw CsvError("expected 3 fields in long-form row " + lines[i]);
            rows.push_back({parse_long(f[0], "t"), parse_long(f[1], "x"), parse_double(f[2], "p")});
        }
        if (rows.empty()) throw CsvError("no data rows in " + path.string());
        long d = 0;
        while (d < static_cast<long>(rows.size()) && rows[static_cast<std::size_t>(d)].t == 0) ++d;
        if (d == 0) throw CsvError("no t=0 block in " + path.string());
        if (rows.size() % static_cast<std::size_t>(d) != 0)
            throw CsvError("ragged long-form distributions in " + path.string());
        const std::size_t T = rows.size() / static_cast<std::size_t>(d);
        RealMatrix m(T, static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            const long want_t = static_cast<long>(i) / d;
            const long want_x = static_cast<long>(i) % d;
            if (r.t != want_t || r.x != want_x)
                throw CsvError("rows not sorted by (t, x) in " + path.string());
            m(static_cast<std::size_t>(r.t), static_cast<std::size_t>(r.x)) = r.p;
        }
        return m;
    }

    if (header.size() >= 2 && header[0] == "t" && header[1].rfind('x', 0) == 0) {
        const std::size_t d = header.size() - 1;
        RealMatrix m(lines.size() - 1, d);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_line(lines[i]);
            if (f.size() != d + 1)
                throw CsvError("wide-form row has wrong field count in " + path.string());
            const long t = parse_long(f[0], "t");
            if (t != static_cast<long>(i - 1))
                throw CsvError("wide-form rows not in t order in " + path.string());
            for (std::size_t x = 0; x < d; ++x)
                m(i - 1, x) = parse_double(f[x + 1], "p");
        }
        return m;
    }

    throw CsvError("unrecognized distributions header in " + path.string());
}

MomentSeries read_moments_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (split_line(lines[0]) != std::vector<std::string>{"t", "mean_displacement", "variance"})
        throw CsvError("unrecognized moments header in " + path.string());
    MomentSeries out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_line(lines[i]);
        if (f.size() != 3) throw CsvError("expected 3 fields in moments row " + lines[i]);
        out.t.push_back(static_cast<int>(parse_long(f[0], "t")));
        out.mean_displacement.push_back(parse_double(f[1], "mean_displacement"));
        out.variance.push_back(parse_double(f[2], "variance"));
        out.degenerate.push_back(0);
    }
    if (out.t.empty()) throw CsvError("no data rows in " + path.string());
    return out;
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string field_to_string(FieldKind f) {
    switch (f) {
        case FieldKind::None: return "none";
        case FieldKind::SpinPosition: return "b";
        case FieldKind::Electric: return "e";
    }
    throw std::logic_error("field_to_string: unknown field kind");
}

FieldKind field_from_string(std::string_view s) {
    if (s == "none") return FieldKind::None;
    if (s == "b") return FieldKind::SpinPosition;
    if (s == "e") return FieldKind::Electric;
    throw std::invalid_argument("unknown field kind: " + std::string(s));
}

namespace {

nlohmann::json config_to_json(const WalkConfig& config) {
    return nlohmann::json{{"d", config.d},
                          {"theta", config.theta},
                          {"q", config.q},
                          {"r", config.r},
                          {"field", field_to_string(config.field)},
                          {"steps", config.steps},
                          {"realizations", config.realizations},
                          {"master_seed", config.master_seed}};
}

}  // namespace

std::string manifest_json(const WalkConfig& config, double duration_seconds,
                          const std::vector<std::string>& outputs) {
    nlohmann::json j{{"artifact", kArtifactName},
                     {"version", kArtifactVersion},
                     {"config", config_to_json(config)},
                     {"duration_seconds", duration_seconds},
                     {"outputs", outputs}};
    return j.dump(2) + "\n";
}

WalkConfig config_from_manifest_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const auto& c = j.at("config");
    WalkConfig out;
    out.d = c.at("d").get<int>();
    out.theta = c.at("theta").get<double>();
    out.q = c.at("q").get<int>();
    out.r = c.at("r").get<double>();
    out.field = field_from_string(c.at("field").get<std::string>());
    out.steps = c.at("steps").get<int>();
    out.realizations = c.at("realizations").get<int>();
    out.master_seed = c.at("master_seed").get<std::uint64_t>();
    return out;
}

}  // namespace qw::io
