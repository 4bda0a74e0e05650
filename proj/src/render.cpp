#include "twoattr/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "twoattr/regularity.hpp"
#include "twoattr/tiling.hpp"

namespace twoattr {

namespace {

constexpr std::uint8_t kDarkGreen[3] = {0, 100, 0};
constexpr std::uint8_t kLightGreen[3] = {144, 238, 144};

RationalMatrix default_projection(std::size_t dim)
{
    if (dim < 2) throw ValidationError("rendering needs dimension at least 2");
    RationalMatrix p(2, dim);
    p(0, 0) = 1;
    p(1, 1) = 1;
    return p;
}

}  // namespace

RenderMode parse_render_mode(const std::string& name)
{
    if (name == "attractor") return RenderMode::Attractor;
    if (name == "split") return RenderMode::Split;
    if (name == "haar") return RenderMode::Haar;
    throw ValidationError("unknown render mode '" + name + "' (attractor, split, haar)");
}

std::string render_mode_name(RenderMode mode)
{
    switch (mode) {
    case RenderMode::Attractor: return "attractor";
    case RenderMode::Split: return "split";
    case RenderMode::Haar: return "haar";
    }
    return "?";
}

std::string Image::ppm() const
{
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    return out;
}

void write_ppm(const Image& img, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    const std::string data = img.ppm();
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw ValidationError("write to '" + path + "' failed");
}

Viewport default_viewport(const DigitSystem& sys, const RationalMatrix& projection, std::size_t width,
                          std::size_t height)
{
    const std::size_t d = sys.dim();
    // G is symmetric about c and G - G lies in the box |x_i| <= h_i, so G lies in c +- h/2.
    const auto h = difference_extent(sys);
    // Barycenter of the uniform self-affine measure: (M - I) c = mean digit. It lies in
    // the hull of G, so G sits in c +- h, and in c +- h/2 when G is centrally symmetric.
    std::vector<double> c(d, 0);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (const auto& v : sys.D)
        for (std::size_t i = 0; i < d; ++i) mean(static_cast<Eigen::Index>(i)) += static_cast<double>(v[i]);
    mean /= static_cast<double>(sys.digit_count());
    const auto n = static_cast<Eigen::Index>(d);
    const Eigen::VectorXd x = (to_eigen(sys.M) - Eigen::MatrixXd::Identity(n, n)).fullPivLu().solve(mean);
    for (std::size_t i = 0; i < d; ++i) c[i] = x(static_cast<Eigen::Index>(i));
    const double scale = sys.digit_count() == 2 ? 0.5 : 1.0;
    double lo[2], hi[2];
    for (std::size_t r = 0; r < 2; ++r) {
        double mid = 0, half = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double p = to_double(projection(r, j));
            mid += p * c[j];
            half += std::abs(p) * h[j] * scale;
        }
        if (half == 0) half = 0.5;
        lo[r] = mid - half;
        hi[r] = mid + half;
    }
    Viewport v{lo[0], hi[0], lo[1], hi[1]};
    if (width && height) {
        const double w = v.xmax - v.xmin, hgt = v.ymax - v.ymin;
        const double want = static_cast<double>(width) / static_cast<double>(height);
        if (w / hgt < want) {
            const double extra = (hgt * want - w) / 2;
            v.xmin -= extra;
            v.xmax += extra;
        } else {
            const double extra = (w / want - hgt) / 2;
            v.ymin -= extra;
            v.ymax += extra;
        }
    }
    return v;
}

Image render(const RenderJob& job, RenderStats* stats)
{
    if (job.depth < 1) throw ValidationError("depth must be at least 1");
    if (job.width == 0 || job.width > 16384 || job.height > 16384) throw ValidationError("image size must be 1..16384");
    const std::size_t d = job.sys.dim();
    const std::size_t m = job.sys.digit_count();
    if (job.mode != RenderMode::Attractor && m != 2) throw ValidationError("split and haar modes need two digits");
    const RationalMatrix P = job.projection.rows() ? job.projection : default_projection(d);
    if (P.rows() != 2 || P.cols() != d) throw ValidationError("projection must be 2 x " + std::to_string(d));
    if (job.depth > max_affordable_depth(m, job.budget)) {
        std::string msg = "depth " + std::to_string(job.depth) + " needs " + std::to_string(m) + "^" +
                          std::to_string(job.depth) + " points, above the budget of " + std::to_string(job.budget) +
                          "; largest affordable depth is " + std::to_string(max_affordable_depth(m, job.budget));
        if (m == 2) {
            try {
                const double alpha = holder_exponent(job.sys).alpha;
                if (alpha > 0) {
                    std::ostringstream s;
                    s << " (reached precision eps ~ 2^-" << max_affordable_depth(m, job.budget) * alpha << ")";
                    msg += s.str();
                }
            } catch (const Error&) {
            }
        }
        throw BudgetError(msg);
    }

    std::size_t W = job.width, H = job.height;
    Viewport v;
    if (job.viewport) {
        v = *job.viewport;
        if (!(v.xmax > v.xmin) || !(v.ymax > v.ymin)) throw ValidationError("empty viewport");
        if (!H) H = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(static_cast<double>(W) * (v.ymax - v.ymin) / (v.xmax - v.xmin))));
    } else {
        const Viewport box = default_viewport(job.sys, P, 0, 0);
        if (!H) H = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(static_cast<double>(W) * (box.ymax - box.ymin) / (box.xmax - box.xmin))));
        v = default_viewport(job.sys, P, W, H);
    }
    if (H > 16384) throw ValidationError("image height above 16384");

    std::vector<double> Pd(2 * d);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t j = 0; j < d; ++j) Pd[r * d + j] = to_double(P(r, j));
    std::int64_t den = 1;
    for (int k = 0; k < job.depth; ++k) den = checked_mul(den, to_int64(abs(determinant(job.sys.M))));
    const double dden = static_cast<double>(den);
    const double sx = static_cast<double>(W) / (v.xmax - v.xmin);
    const double sy = static_cast<double>(H) / (v.ymax - v.ymin);

    const unsigned workers = std::max(1u, job.workers);
    // bit t set: some point with first digit t lands in the pixel
    std::vector<std::vector<std::uint8_t>> masks(workers, std::vector<std::uint8_t>(W * H, 0));
    std::vector<std::vector<std::size_t>> counts(workers, std::vector<std::size_t>(m, 0));
    for_each_point(
        job.sys, job.depth, workers,
        [&](unsigned w, const IntVector& num, std::size_t first) {
            ++counts[w][first];
            double x = 0, y = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const double t = static_cast<double>(num[j]) / dden;
                x += Pd[j] * t;
                y += Pd[d + j] * t;
            }
            const double fx = std::floor((x - v.xmin) * sx), fy = std::floor((y - v.ymin) * sy);
            if (fx < 0 || fy < 0 || fx >= static_cast<double>(W) || fy >= static_cast<double>(H)) return;
            const std::size_t row = H - 1 - static_cast<std::size_t>(fy);
            const std::size_t idx = row * W + static_cast<std::size_t>(fx);
            masks[w][idx] |= static_cast<std::uint8_t>(1u << std::min<std::size_t>(first, 7));
        },
        job.budget);
    std::vector<std::uint8_t> mask = std::move(masks[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] |= masks[w][i];

    Image img;
    img.width = W;
    img.height = H;
    img.rgb.assign(W * H * 3, 255);
    std::size_t set = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const std::uint8_t b = mask[i];
        if (!b) {
            if (job.mode == RenderMode::Haar) img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = 128;
            continue;
        }
        ++set;
        std::uint8_t* px = &img.rgb[3 * i];
        switch (job.mode) {
        case RenderMode::Attractor: px[0] = px[1] = px[2] = 0; break;
        case RenderMode::Split: std::copy_n(b & 1u ? kDarkGreen : kLightGreen, 3, px); break;
        case RenderMode::Haar:
            // psi = +1 on M^{-1}(G + a_0), -1 on M^{-1}(G + a_1), 0 where both meet
            px[0] = px[1] = px[2] = b == 1 ? 255 : b == 2 ? 0 : 128;
            break;
        }
    }
    if (stats) {
        stats->points = 0;
        stats->points_per_digit.assign(m, 0);
        for (const auto& c : counts)
            for (std::size_t t = 0; t < m; ++t) stats->points_per_digit[t] += c[t];
        for (auto c : stats->points_per_digit) stats->points += c;
        stats->pixels_set = set;
        stats->viewport = v;
    }
    return img;
}

int max_affordable_depth(std::size_t digit_count, std::size_t budget)
{
    if (digit_count < 2) throw ValidationError("need at least two digits");
    int k = 0;
    for (std::size_t n = digit_count; n <= budget; n *= digit_count) {
        ++k;
        if (n > budget / digit_count) break;
    }
    return k;
}

int auto_depth_for(double alpha, double eps)
{
    if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
    if (!(alpha > 0)) throw ValidationError("Holder exponent must be positive for auto depth");
    // k = ceil(log2(1/eps) / alpha); the tiny slack absorbs rounding in alpha
    return static_cast<int>(std::ceil(std::log2(1 / eps) / alpha - 1e-9));
}

AutoDepth auto_depth(const DigitSystem& sys, double eps, std::size_t budget)
{
    AutoDepth a;
    a.alpha = holder_exponent(sys).alpha;
    a.depth = auto_depth_for(a.alpha, eps);
    a.affordable = max_affordable_depth(sys.digit_count(), budget);
    return a;
}

}  // namespace twoattr
