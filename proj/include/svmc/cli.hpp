#pragma once

namespace svmc {

/// Full CLI entry point: `run <config-file> [--format json|csv] [--out DIR]
/// [--oracles on|off]`. Returns the process exit code (see errors.hpp);
/// callable directly from tests. The GREEKS_SEED environment variable, when
/// set, overrides the config seed and nothing else.
int cli_run(int argc, const char* const* argv);

}  // namespace svmc
