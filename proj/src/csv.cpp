#include "pdef/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pdef {

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const Preamble& preamble,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto& [key, value] : preamble) out_ << "# " << key << '=' << value << '\n';
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out_ << ',';
        out_ << fields[k];
    }
    out_ << '\n';
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << '\n';
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed for " + path_.string());
    out_.close();
}

void write_attacks_csv(const std::filesystem::path& path, const Preamble& preamble,
                       const std::vector<TrialAttacks>& trials) {
    CsvWriter csv(path, preamble, {"trial", "j", "location", "time"});
    for (const auto& t : trials) {
        for (std::size_t j = 0; j < t.attacks.size(); ++j) {
            csv.row({std::to_string(t.trial), std::to_string(j + 1),
                     format_real(t.attacks[j].location.coordinate()), format_real(t.attacks[j].time)});
        }
    }
    csv.close();
}

AttackSequence read_attacks_csv(const std::filesystem::path& path, std::optional<std::uint64_t> trial) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open attack file " + path.string());
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::vector<Attack> attacks;
    std::optional<std::uint64_t> chosen = trial;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "trial,j,location,time") {
                throw std::runtime_error(path.string() + ": expected header trial,j,location,time");
            }
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string f[4];
        for (auto& field : f) {
            if (!std::getline(ss, field, ',')) {
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected 4 fields");
            }
        }
        try {
            const std::uint64_t t = std::stoull(f[0]);
            if (!chosen) chosen = t;
            if (t != *chosen) continue;
            std::size_t used = 0;
            const double location = std::stod(f[2], &used);
            if (used != f[2].size()) throw std::invalid_argument(f[2]);
            const double time = std::stod(f[3], &used);
            if (used != f[3].size()) throw std::invalid_argument(f[3]);
            attacks.push_back({PerimeterPoint(location), time});
        } catch (const std::logic_error&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
    }
    if (!header_seen) throw std::runtime_error(path.string() + ": missing header");
    if (attacks.empty()) throw std::runtime_error(path.string() + ": no attacks for the selected trial");
    return AttackSequence(std::move(attacks), Setting::uniform_time);
}

}  // namespace pdef
