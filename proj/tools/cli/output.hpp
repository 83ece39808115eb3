#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace altpd::cli {

// CSV file with a one-line "# {json}" provenance header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const nlohmann::json& provenance, const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  void row(const std::string& label, const std::vector<double>& values);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream file_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

// Finite values as numbers, non-finite as null.
nlohmann::json number(double v);

std::filesystem::path prepare_output_dir(const std::string& dir);

}  // namespace altpd::cli
