// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace saturator::testing {

// One "$ saturator ..." line followed by its exact stdout and an optional "[exit N]".
struct Transcript {
  std::string command;
  std::string expected;
  int exit_code = 0;
  std::size_t line = 0;
};

// Blank lines, "```" fences and the next "$ " line end a transcript.
std::vector<Transcript> parse_transcripts(const std::string& text);

struct ShellResult {
  std::string out;
  int exit_code = -1;
};

// Runs the command through /bin/sh with the leading "saturator" replaced by `binary`;
// stderr is discarded.
ShellResult run_transcript(const std::string& binary, const std::string& command);

std::string read_text(const std::string& path);

}  // namespace saturator::testing
