// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include "spde/scenario.hpp"

namespace spde {

// Experiment orchestration shared by the command-line tool and the test
// rigs.  Runs one subcommand of a validated scenario, writes the effective
// configuration, CSV artifacts, and a summary into out_dir, and mirrors the
// summary to `log`.
//
// Subcommands: simulate, converge, bj, apriori, continuity, oracle.
// Returns 0 when every check of the subcommand passed (simulate has none
// beyond solver health), 1 otherwise.  CSV bodies depend only on the
// scenario (fixed formatting, no timestamps), so reruns are byte-identical.
int run_subcommand(const std::string& subcommand, const Scenario& s,
                   const std::string& out_dir, std::ostream& log);

}  // namespace spde
