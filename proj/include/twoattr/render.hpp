#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoattr/attract.hpp"

namespace twoattr {

enum class RenderMode { Attractor, Split, Haar };

RenderMode parse_render_mode(const std::string& name);
std::string render_mode_name(RenderMode mode);

struct Viewport {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
};

struct RenderJob {
    DigitSystem sys;
    int depth = 12;
    std::size_t width = 512;
    std::size_t height = 0;  // 0: follow the viewport aspect ratio
    RenderMode mode = RenderMode::Attractor;
    // 2 x d projection; empty selects coordinates (0, 1), dropping the rest.
    RationalMatrix projection;
    std::optional<Viewport> viewport;  // default: box around the projected attractor
    unsigned workers = 1;
    std::size_t budget = kDefaultPointBudget;
};

struct Image {
    std::size_t width = 0, height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, top row first
    std::string ppm() const;       // binary P6
};

struct RenderStats {
    std::size_t points = 0;
    std::vector<std::size_t> points_per_digit;  // by first digit a_1
    std::size_t pixels_set = 0;                 // pixels hit by at least one point
    Viewport viewport;
};

Image render(const RenderJob& job, RenderStats* stats = nullptr);
void write_ppm(const Image& img, const std::string& path);

// Box c +- h/2 around the attractor, projected and widened to the image aspect ratio.
Viewport default_viewport(const DigitSystem& sys, const RationalMatrix& projection, std::size_t width,
                          std::size_t height);

// Largest depth whose m^k points fit the budget.
int max_affordable_depth(std::size_t digit_count, std::size_t budget = kDefaultPointBudget);

struct AutoDepth {
    double alpha = 0;
    int depth = 0;       // ceil(log2(1/eps) / alpha)
    int affordable = 0;  // max_affordable_depth
    bool clamped() const { return depth > affordable; }
};

AutoDepth auto_depth(const DigitSystem& sys, double eps, std::size_t budget = kDefaultPointBudget);
int auto_depth_for(double alpha, double eps);

}  // namespace twoattr
