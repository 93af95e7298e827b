#include "cli/dist_io.hpp"

#include <fstream>
#include <sstream>

#include "cli/csv.hpp"
#include "cosa/error.hpp"

namespace cosa::cli {

namespace {
constexpr const char* kMagic = "cosa-dist v1";
}

void write_dist(std::ostream& out, const DistFile& file) {
  out << kMagic << '\n' << "n " << file.d.size() << '\n' << "flags ";
  if (file.flags.empty()) out << '-';
  for (std::size_t t = 0; t < file.flags.size(); ++t) out << (t ? "," : "") << file.flags[t];
  out << '\n';
  for (double v : file.d.values()) out << format_double(v) << '\n';
}

void write_dist(const std::string& path, const DistFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  write_dist(out, file);
}

DistFile read_dist(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw Error(ErrorCode::Parse, std::string("dissimilarity file truncated before ") + what);
    ++lineno;
  };
  if (!std::getline(in, line) || line != kMagic) throw Error(ErrorCode::Parse, "line 1: expected 'cosa-dist v1'");
  next("object count");
  std::size_t n = 0;
  if (line.rfind("n ", 0) != 0) throw Error(ErrorCode::Parse, "line 2: expected 'n <N>'");
  try {
    n = std::stoul(line.substr(2));
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "line 2: bad object count");
  }
  if (n < 2) throw Error(ErrorCode::Parse, "line 2: N must be >= 2");
  next("flags");
  if (line.rfind("flags ", 0) != 0) throw Error(ErrorCode::Parse, "line 3: expected 'flags ...'");
  DistFile file;
  const std::string flags = line.substr(6);
  if (flags != "-") {
    std::stringstream ss(flags);
    std::string tok;
    while (std::getline(ss, tok, ',')) file.flags.push_back(tok);
  }
  std::vector<double> values;
  values.reserve(pair_count(n));
  while (values.size() < pair_count(n)) {
    next("all values were read");
    try {
      values.push_back(parse_double(line));
    } catch (const Error&) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": not a number: '" + line + "'");
    }
  }
  if (std::getline(in, line) && !line.empty())
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno + 1) + ": trailing data");
  file.d = DissimilarityMatrix(n, std::move(values));
  return file;
}

DistFile read_dist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_dist(in);
}

}  // namespace cosa::cli
