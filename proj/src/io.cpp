#include "cyclic/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#ifndef CYCLIC_BUILD_ID
#define CYCLIC_BUILD_ID "unknown"
#endif

namespace cyclic::io {

std::string_view build_id()
{
    return CYCLIC_BUILD_ID;
}

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("not a number: '" + std::string(s) + "'");
    }
    return x;
}

namespace {

long parse_long(std::string_view s)
{
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

// Reads `# key=value` lines, then returns the column header line.
std::string read_preamble(std::istream& is, Metadata& meta)
{
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] != '#') {
            return line;
        }
        std::string_view body(line);
        body.remove_prefix(1);
        if (!body.empty() && body.front() == ' ') {
            body.remove_prefix(1);
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw IoError("malformed header line: " + line);
        }
        meta.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
    }
    throw IoError("missing column header");
}

}  // namespace

const std::string& meta_value(const Metadata& meta, std::string_view key)
{
    for (const auto& [k, v] : meta) {
        if (k == key) {
            return v;
        }
    }
    throw IoError("missing header key: " + std::string(key));
}

void write_metadata(std::ostream& os, const Metadata& meta)
{
    for (const auto& [k, v] : meta) {
        os << "# " << k << '=' << v << '\n';
    }
}

void write_samples(std::ostream& os, const sim::SampleSet& set, const Metadata& meta)
{
    const int d = set.params.dim;
    write_metadata(os, meta);
    os << "replication,n_events,u,stratum";
    for (int i = 1; i <= d; ++i) {
        os << ",x" << i;
    }
    os << ",final_direction\n";
    for (std::size_t r = 0; r < set.outcomes.size(); ++r) {
        const auto& o = set.outcomes[r];
        os << r << ',' << o.n_events << ',' << format_double(o.u) << ',' << o.stratum.label();
        for (int i = 0; i < d; ++i) {
            os << ',' << format_double(o.position[i]);
        }
        os << ',' << o.final_direction.index << '\n';
    }
}

SampleTable read_samples(std::istream& is)
{
    SampleTable table;
    const std::string header = read_preamble(is, table.meta);
    const auto cols = split_csv(header);
    if (cols.size() < 6 || cols[0] != "replication" || cols[1] != "n_events" || cols[2] != "u"
        || cols[3] != "stratum" || cols.back() != "final_direction") {
        throw IoError("unexpected sample columns: " + header);
    }
    table.dim = static_cast<int>(cols.size()) - 5;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != cols.size()) {
            throw IoError("wrong field count in row: " + line);
        }
        SampleRow row;
        row.replication = static_cast<std::size_t>(parse_long(f[0]));
        row.n_events = static_cast<int>(parse_long(f[1]));
        row.u = parse_double(f[2]);
        try {
            row.stratum = sim::Stratum::parse(std::string(f[3]));
        }
        catch (const DomainError& e) {
            throw IoError(e.what());
        }
        for (int i = 0; i < table.dim; ++i) {
            row.x.push_back(parse_double(f[4 + i]));
        }
        row.final_direction = static_cast<int>(parse_long(f.back()));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_table(std::ostream& os, const Table& table)
{
    write_metadata(os, table.meta);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << '\n';
    }
}

Table read_table(std::istream& is)
{
    Table table;
    const std::string header = read_preamble(is, table.meta);
    for (auto c : split_csv(header)) {
        table.columns.emplace_back(c);
    }
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != table.columns.size()) {
            throw IoError("wrong field count in row: " + line);
        }
        std::vector<double> row;
        row.reserve(f.size());
        for (auto v : f) {
            row.push_back(parse_double(v));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

nlohmann::json number_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

void write_report(std::ostream& os, const std::vector<stats::TestReport>& reports)
{
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : reports) {
        doc.push_back({{"name", r.name},
                       {"statistic", number_or_null(r.statistic)},
                       {"p_value", number_or_null(r.p_value)},
                       {"tolerance", number_or_null(r.tolerance)},
                       {"pass", r.pass}});
    }
    os << doc.dump(2) << '\n';
}

std::vector<stats::TestReport> read_report(std::istream& is)
{
    std::vector<stats::TestReport> out;
    try {
        const auto doc = nlohmann::json::parse(is);
        if (!doc.is_array()) {
            throw IoError("report is not a JSON array");
        }
        for (const auto& e : doc) {
            stats::TestReport r;
            r.name = e.at("name").get<std::string>();
            r.statistic = number_from(e.at("statistic"));
            r.p_value = number_from(e.at("p_value"));
            r.tolerance = number_from(e.at("tolerance"));
            r.pass = e.at("pass").get<bool>();
            out.push_back(std::move(r));
        }
    }
    catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed report: ") + e.what());
    }
    return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot open for writing: " + path);
    }
    body(os);
    os.flush();
    if (!os) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace cyclic::io
