#include "output.hpp"

#include <cmath>
#include <stdexcept>

#include "cli.hpp"

namespace altpd::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, const nlohmann::json& provenance,
                     const std::vector<std::string>& columns)
    : path_(path), file_(path) {
  if (!file_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file_ << "# " << provenance.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) file_ << (i ? "," : "") << columns[i];
  file_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) file_ << (i ? "," : "") << format_double(values[i]);
  file_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
  file_ << label;
  for (double v : values) file_ << ',' << format_double(v);
  file_ << '\n';
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << doc.dump(2) << '\n';
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::filesystem::path prepare_output_dir(const std::string& dir) {
  std::filesystem::path path(dir.empty() ? "." : dir);
  std::filesystem::create_directories(path);
  return path;
}

}  // namespace altpd::cli
