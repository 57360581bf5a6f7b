#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "chainform/frame.hpp"

namespace chainform {

/// Locale-independent decimal with 9 significant digits.
std::string format_decimal(double v);

/// Shortest decimal that reads back as exactly `v`.
std::string format_exact(double v);

/// Trajectory CSV: header `frame,point_id,x_um,y_um,elongation_next_um,driven`
/// and one row per frame and point. Point ids run across chains in order;
/// elongation_next is empty on the last point of each chain.
void write_trajectory(std::span<const FrameRecord> frames, std::ostream& out);
void write_trajectory(std::span<const FrameRecord> frames, const std::filesystem::path& path);
std::string trajectory_csv(std::span<const FrameRecord> frames);

}  // namespace chainform
