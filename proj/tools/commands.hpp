#pragma once

#include <optional>

#include "kanesi/io/config.hpp"

namespace kanesi::cli {

// Each command writes its files into cfg.out_dir and a short summary to stdout.
void cmd_hic(const io::RunConfig& cfg);
void cmd_error_budget(const io::RunConfig& cfg);
void cmd_spectrum(const io::RunConfig& cfg);
void cmd_anticross(const io::RunConfig& cfg);
/// Returns true when every selected criterion passes.
bool cmd_validate(std::optional<int> only);

}  // namespace kanesi::cli
