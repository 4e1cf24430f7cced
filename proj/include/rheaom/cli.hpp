#pragma once

namespace rheaom {

// Entry point behind the `rheaom` binary; returns the process exit code
// (0 success, 1 config/runtime error, 2 usage error).
int cli_main(int argc, const char* const* argv);

}  // namespace rheaom
