#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fracbs {

/// One line of a study table: `study,alpha,theta,n,N,value,error,seconds`.
struct StudyRow {
  std::string study;
  double alpha = 0.0;
  double theta = 0.0;
  int n = 0;
  int N = 0;
  double value = 0.0;
  double error = 0.0;
  double seconds = 0.0;
};

inline constexpr const char* kCsvHeader = "study,alpha,theta,n,N,value,error,seconds";

/// Shortest decimal text that reads back to the same double (17 significant
/// digits at most).
std::string format_exact(double v);

/// 6 significant digits for human-readable tables.
std::string format_short(double v);

/// CSV text.  Each `preamble` line is written first as "# <line>".
std::string to_csv(const std::vector<StudyRow>& rows, const std::vector<std::string>& preamble);

/// {"config": {key: value, ...}, "rows": [{...}, ...]} with the preamble's
/// key=value pairs as the config object.
std::string to_json(const std::vector<StudyRow>& rows, const std::vector<std::string>& preamble);

/// Fixed-width text table of the rows for a terminal.
std::string to_table(const std::vector<StudyRow>& rows);

/// `<study>_<timestamp>.<ext>` under `dir`, where timestamp is UTC
/// YYYYmmddTHHMMSS.
std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& study,
                                    const std::string& ext);

/// Writes `text` to `path`.  Throws std::ios_base::failure when the file
/// cannot be created or written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fracbs
