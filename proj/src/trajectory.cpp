#include "chainform/trajectory.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "chainform/error.hpp"

namespace chainform {

namespace {

std::string to_chars_string(double v, bool fixed_precision) {
    if (v == 0.0) {
        v = 0.0;  // folds -0
    }
    std::array<char, 64> buf{};
    const auto res = fixed_precision ? std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9)
                                     : std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

}  // namespace

std::string format_decimal(double v) { return to_chars_string(v, true); }

std::string format_exact(double v) { return to_chars_string(v, false); }

void write_trajectory(std::span<const FrameRecord> frames, std::ostream& out) {
    if (frames.empty()) {
        throw Error("trajectory: no frames to write");
    }
    const auto& layout = frames.front().chains;
    out << "frame,point_id,x_um,y_um,elongation_next_um,driven\n";
    std::int64_t last_index = frames.front().frame_index - 1;
    for (const auto& f : frames) {
        if (f.chains.size() != layout.size()) {
            throw Error("trajectory: frame " + std::to_string(f.frame_index) + " has a different chain count");
        }
        if (f.frame_index <= last_index) {
            throw Error("trajectory: frame indices must increase");
        }
        last_index = f.frame_index;
        std::size_t global = 0;
        for (std::size_t c = 0; c < f.chains.size(); ++c) {
            const auto& ch = f.chains[c];
            if (ch.points.size() != layout[c].points.size() || ch.elongation.size() + 1 != ch.points.size()) {
                throw Error("trajectory: frame " + std::to_string(f.frame_index) + " has inconsistent columns");
            }
            for (std::size_t i = 0; i < ch.points.size(); ++i, ++global) {
                const bool driven = f.driven && f.driven->chain == c && f.driven->point == i;
                out << f.frame_index << ',' << global << ',' << format_decimal(ch.points[i].x) << ','
                    << format_decimal(ch.points[i].y) << ',';
                if (i < ch.elongation.size()) {
                    out << format_decimal(ch.elongation[i]);
                }
                out << ',' << (driven ? 1 : 0) << '\n';
            }
        }
    }
}

void write_trajectory(std::span<const FrameRecord> frames, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    write_trajectory(frames, out);
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

std::string trajectory_csv(std::span<const FrameRecord> frames) {
    std::ostringstream out;
    write_trajectory(frames, out);
    return out.str();
}

}  // namespace chainform
