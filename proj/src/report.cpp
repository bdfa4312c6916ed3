#include "fracbs/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace fracbs {

std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string to_csv(const std::vector<StudyRow>& rows, const std::vector<std::string>& preamble) {
  std::ostringstream out;
  for (const auto& line : preamble) out << "# " << line << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.study << ',' << format_exact(r.alpha) << ',' << format_exact(r.theta) << ',' << r.n
        << ',' << r.N << ',' << format_exact(r.value) << ',' << format_exact(r.error) << ','
        << format_exact(r.seconds) << '\n';
  }
  return out.str();
}

namespace {

// JSON has no inf/nan; blown-up errors are stored as null.
nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string to_json(const std::vector<StudyRow>& rows, const std::vector<std::string>& preamble) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& line : preamble) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    config[line.substr(0, eq)] = line.substr(eq + 1);
  }
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"study", r.study},
                           {"alpha", number(r.alpha)},
                           {"theta", number(r.theta)},
                           {"n", r.n},
                           {"N", r.N},
                           {"value", number(r.value)},
                           {"error", number(r.error)},
                           {"seconds", number(r.seconds)}});
  }
  return doc.dump(2) + "\n";
}

std::string to_table(const std::vector<StudyRow>& rows) {
  std::ostringstream out;
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.study.size());
  out << std::left << std::setw(static_cast<int>(width)) << "study" << std::right
      << std::setw(10) << "alpha" << std::setw(10) << "theta" << std::setw(7) << "n"
      << std::setw(7) << "N" << std::setw(16) << "value" << std::setw(16) << "error"
      << std::setw(13) << "seconds" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.study << std::right
        << std::setw(10) << format_short(r.alpha) << std::setw(10) << format_short(r.theta)
        << std::setw(7) << r.n << std::setw(7) << r.N << std::setw(16) << format_short(r.value)
        << std::setw(16) << format_short(r.error) << std::setw(13) << format_short(r.seconds)
        << '\n';
  }
  return out.str();
}

std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& study,
                                    const std::string& ext) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%S", &utc);
  return dir / (study + "_" + stamp + "." + ext);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing " + path.string());
}

}  // namespace fracbs
