#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdef/attacks.hpp"

namespace pdef {

// 17 significant digits, round-trips through strtod.
std::string format_real(double value);

using Preamble = std::vector<std::pair<std::string, std::string>>;

// Writes `# key=value` preamble lines, then a header row, then data rows.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const Preamble& preamble, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);
    void comment(const std::string& text);
    void close();

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

struct TrialAttacks {
    std::uint64_t trial = 0;
    AttackSequence attacks;
};

void write_attacks_csv(const std::filesystem::path& path, const Preamble& preamble,
                       const std::vector<TrialAttacks>& trials);

// Reads a `trial,j,location,time` file. When `trial` is set only that trial's
// rows are kept, otherwise the first trial in the file.
AttackSequence read_attacks_csv(const std::filesystem::path& path, std::optional<std::uint64_t> trial = {});

}  // namespace pdef
