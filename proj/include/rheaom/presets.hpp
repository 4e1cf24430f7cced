#pragma once

#include <string>
#include <vector>

#include "rheaom/harness.hpp"

namespace rheaom {

struct PresetOptions {
    uint64_t seed = 1;
    std::string out_dir = "out";
    std::vector<std::string> overrides;  // key=value, applied to every cell config
    std::string budget_mode;             // "", "calls" or "ms"
    int threads = 0;
};

struct PresetCellResult {
    std::string character;
    std::string p1, p2;
    SeriesResult series;
};

std::vector<std::string> preset_names();

// Runs one named reproduction preset and writes per-cell artifacts plus a
// summary table under options.out_dir. Throws std::invalid_argument for an
// unknown preset name.
std::vector<PresetCellResult> run_preset(const std::string& name, const PresetOptions& options);

}  // namespace rheaom
