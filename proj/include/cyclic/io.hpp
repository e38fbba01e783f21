#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclic/simulation.hpp"
#include "cyclic/statistics.hpp"

namespace cyclic::io {

/// Error reading or writing a file (exit code 2 in the CLI).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `git describe` of the build.
std::string_view build_id();

/// Ordered key=value pairs written as `# key=value` lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s);

/// Looks up a key; throws IoError when missing.
const std::string& meta_value(const Metadata& meta, std::string_view key);

void write_metadata(std::ostream& os, const Metadata& meta);

/// Columns replication, n_events, u, stratum, x1..xd, final_direction.
void write_samples(std::ostream& os, const sim::SampleSet& set, const Metadata& meta);

struct SampleRow {
    std::size_t replication = 0;
    int n_events = 0;
    double u = 0.0;
    sim::Stratum stratum;
    std::vector<double> x;
    int final_direction = 1;

    friend bool operator==(const SampleRow&, const SampleRow&) = default;
};

struct SampleTable {
    Metadata meta;
    int dim = 0;
    std::vector<SampleRow> rows;
};

SampleTable read_samples(std::istream& is);

/// Generic numeric table: named columns of equal length.
struct Table {
    Metadata meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& os, const Table& table);
Table read_table(std::istream& is);

/// JSON array of {name, statistic, p_value, tolerance, pass}; non-finite
/// numbers are written as null and read back as NaN.
void write_report(std::ostream& os, const std::vector<stats::TestReport>& reports);
std::vector<stats::TestReport> read_report(std::istream& is);

/// Opens `path` for writing and calls `body`; IoError when the file cannot
/// be opened or the write fails.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& body);

}  // namespace cyclic::io
