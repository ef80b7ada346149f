// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoverify::cli {

/// Runs one command line. Returns the process exit status; nonzero exactly
/// when the command failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace geoverify::cli
