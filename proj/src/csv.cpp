#include "hrodds/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "hrodds/errors.hpp"

namespace hrodds {

void write_dataset_csv(const SurvivalDataset& data, std::ostream& out) {
    out << "time,event,arm\n";
    char buf[48];
    for (const Observation& o : data.observations()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%d,%d\n", o.time, o.event ? 1 : 0, o.arm);
        out << buf;
    }
}

std::string dataset_to_csv(const SurvivalDataset& data) {
    std::ostringstream out;
    write_dataset_csv(data, out);
    return out.str();
}

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

double parse_time_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("bad CSV: line " + std::to_string(line_no) +
                             ": time is not a number: '" + std::string(field) + "'",
                         line_no);
    }
    return value;
}

int parse_binary_field(std::string_view field, const char* name, std::size_t line_no) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw ParseError("bad CSV: line " + std::to_string(line_no) + ": " + name +
                         " must be 0 or 1, got '" + std::string(field) + "'",
                     line_no);
}

}  // namespace

SurvivalDataset read_dataset_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || strip_cr(line) != "time,event,arm") {
        throw ParseError("bad CSV: expected header 'time,event,arm'", 1);
    }
    std::vector<Observation> obs;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const std::size_t c1 = row.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos ||
            row.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("bad CSV: line " + std::to_string(line_no) +
                                 ": expected 3 comma-separated fields",
                             line_no);
        }
        const double time = parse_time_field(row.substr(0, c1), line_no);
        const int event = parse_binary_field(row.substr(c1 + 1, c2 - c1 - 1), "event", line_no);
        const int arm = parse_binary_field(row.substr(c2 + 1), "arm", line_no);
        try {
            obs.emplace_back(time, event == 1, arm);
        } catch (const std::invalid_argument& e) {
            throw ParseError("bad CSV: line " + std::to_string(line_no) + ": " + e.what(),
                             line_no);
        }
    }
    if (obs.empty()) throw ParseError("bad CSV: no data rows", line_no);
    return SurvivalDataset(std::move(obs));
}

SurvivalDataset dataset_from_csv(const std::string& text) {
    std::istringstream in(text);
    return read_dataset_csv(in);
}

}  // namespace hrodds
