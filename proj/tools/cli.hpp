#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace critgroup::cli {

// Exit codes shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // a check failed or results disagree
constexpr int kExitUsage = 2;    // bad arguments, unreadable input, unwritable output
constexpr int kExitRefused = 3;  // method not applicable to the spec

constexpr std::size_t kMaxGridSpecs = 10000;

enum class Method { snf, pipeline, closed };

struct GroupOptions {
  std::string spec;
  Method method = Method::snf;
  bool json = false;
};

struct VerifyOptions {
  std::optional<std::string> spec;
  std::vector<std::string> grid;  // {"k=2..6", "n=2..4"}
  unsigned threads = 0;           // 0 picks the hardware concurrency
};

struct SnfOptions {
  std::string path;
  bool transforms = false;
};

struct ExportOptions {
  std::string spec;
  std::string dot_path;
};

int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_snf(const SnfOptions& opt, std::ostream& out, std::ostream& err);
int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one of the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace critgroup::cli
