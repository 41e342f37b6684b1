// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace saturator {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitBudget = 2 };

// Runs one command line (without the program name).  Results and error reports are
// single-line JSON documents with "v": 1 written to `out`; usage text goes to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace saturator
