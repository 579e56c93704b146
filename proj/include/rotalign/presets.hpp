#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rotalign/experiment.hpp"

namespace rotalign {

/// Figure presets: fig1 ... fig11, plus the single-panel splits fig5a/b,
/// fig6a/b, fig8a/b and fig9a/b. `fast` shrinks grids for quick runs.
ExperimentConfig preset(std::string_view name, bool fast = false);

std::vector<std::string> preset_names();

} // namespace rotalign
