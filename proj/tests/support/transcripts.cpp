// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "transcripts.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace saturator::testing {

namespace {

constexpr const char* kPrompt = "$ saturator ";

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

std::vector<Transcript> parse_transcripts(const std::string& text) {
  std::vector<Transcript> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  bool open = false;
  while (std::getline(in, line)) {
    ++number;
    if (starts_with(line, kPrompt)) {
      out.push_back({line.substr(2), "", 0, number});
      open = true;
      continue;
    }
    if (!open) continue;
    if (line.empty() || starts_with(line, "```") || starts_with(line, "$ ")) {
      open = false;
      continue;
    }
    if (starts_with(line, "[exit ") && line.back() == ']') {
      out.back().exit_code = std::stoi(line.substr(6, line.size() - 7));
      open = false;
      continue;
    }
    out.back().expected += line + "\n";
  }
  return out;
}

ShellResult run_transcript(const std::string& binary, const std::string& command) {
  const std::string shell = "'" + binary + "'" + command.substr(std::string("saturator").size()) + " 2>/dev/null";
  FILE* pipe = popen(shell.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for " + command);
  ShellResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace saturator::testing
