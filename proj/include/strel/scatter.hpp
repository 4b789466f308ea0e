#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace strel {

// Writes `<stem>.csv` (`gold,pred` rows) and `<stem>.svg`, a self-contained
// scatter plot over the unit square with a y=x reference line.
void emit_scatter(std::span<const double> gold, std::span<const double> pred,
                  const std::filesystem::path& stem, const std::string& title = {});

}  // namespace strel
