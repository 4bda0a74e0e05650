// twoattr command-line tool; talks to the library through the C interface only.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twoattr/twoattr.h"

namespace {

const char* kind_name(int code)
{
    switch (code) {
    case TA_ERR_VALIDATION: return "validation";
    case TA_ERR_BUDGET: return "budget";
    default: return "internal";
    }
}

int fail(int code, const std::string& message)
{
    nlohmann::json j;
    j["error"] = kind_name(code);
    j["code"] = code;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
    return code;
}

int fail(ta_status s) { return fail(s, ta_last_error()); }

// Prints the returned string, frees it and maps the status to an exit code.
int emit(ta_status s, char** slot)
{
    if (s != TA_OK) return fail(s);
    const char* out = *slot;
    std::cout << out;
    if (out[0] && out[std::strlen(out) - 1] != '\n') std::cout << "\n";
    ta_string_free(*slot);
    *slot = nullptr;
    return 0;
}

struct Poly {
    ta_poly* p = nullptr;
    ~Poly() { ta_poly_free(p); }
};

struct System {
    ta_system* s = nullptr;
    ~System() { ta_system_free(s); }
};

// Builds the system from --matrix/--digits when given, else from the polynomial.
ta_status make_system(const std::string& poly, const std::string& matrix, const std::string& digits, System& out)
{
    if (!matrix.empty()) return ta_system_parse(matrix.c_str(), digits.c_str(), &out.s);
    Poly p;
    if (ta_status s = ta_poly_parse(poly.c_str(), &p.p); s != TA_OK) return s;
    return ta_system_from_poly(p.p, &out.s);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-digit self-affine attractors: enumeration, tiles, regularity, hulls, rendering"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ta_version());

    int degree = 0;
    bool deep = false, meta = false;
    unsigned workers = 1;
    auto* enumerate = app.add_subcommand("enumerate", "Admissible expanding polynomials of a degree");
    enumerate->add_option("--degree", degree, "Degree d")->required();
    enumerate->add_flag("--deep", deep, "Allow degrees 7 and 8 (hours)");
    enumerate->add_flag("--meta", meta, "Add class, tile verdict and Holder exponent per class");
    enumerate->add_option("--workers", workers, "Threads");

    std::string poly, matrix, digits;
    auto* classify = app.add_subcommand("classify", "Isotropic class, class key and opposite");
    classify->add_option("poly", poly, "Coefficients, free term first")->required();

    auto* tile = app.add_subcommand("tile-check", "Measure and tile verdict");
    tile->add_option("poly", poly, "Coefficients, free term first");
    tile->add_option("--matrix", matrix, "Dilation matrix, rows separated by ';'");
    tile->add_option("--digits", digits, "Digits, one per row separated by ';'");

    bool all_cubics = false;
    auto* holder = app.add_subcommand("holder", "L2 spectral radius and Holder exponent");
    holder->add_option("poly", poly, "Coefficients, free term first");
    holder->add_option("--matrix", matrix, "Dilation matrix");
    holder->add_option("--digits", digits, "Digits");
    holder->add_flag("--all-cubics", all_cubics, "All seven cubic classes");

    int depth = 16;
    auto* hull = app.add_subcommand("hull", "Convex hull as a truncated zonotope");
    hull->add_option("poly", poly, "Coefficients, free term first")->required();
    hull->add_option("--depth", depth, "Number of segments K");

    std::string series_tag, sign = "+";
    std::vector<int> params;
    bool override_validity = false;
    auto* series = app.add_subcommand("series", "Generate a polynomial of a known expanding series");
    series->add_option("--id", series_tag, "1a 1b 2a 2b 2c 3a 3b 4a 4b 5 6 7")->required();
    series->add_option("--params", params, "Parameters (m q [k] | m r | a b k)")->required()->delimiter(',');
    series->add_option("--sign", sign, "Series 6 sign, + or -");
    series->add_flag("--override", override_validity, "Generate even if the validity clause fails");

    std::int64_t part_d = 0;
    auto* partitions = app.add_subcommand("partitions", "Three-part partition counts b(d), b+(d)");
    partitions->add_option("--d", part_d, "d")->required();

    std::string seg_file;
    std::size_t dim = 2;
    auto* recover = app.add_subcommand("recover", "Recover a dilation from its segment family");
    recover->add_option("--segments", seg_file, "File with 'vx,vy[,vz] @ multiplicity' lines")->required();
    recover->add_option("--dim", dim, "Dimension")->required();

    std::string out_path, mode = "attractor", axes = "0,1";
    bool auto_depth = false;
    double eps = 1.0 / 32;
    std::size_t width = 512, height = 0;
    auto* render = app.add_subcommand("render", "Rasterize the attractor into a PPM image");
    render->add_option("poly", poly, "Coefficients, free term first");
    render->add_option("--matrix", matrix, "Dilation matrix");
    render->add_option("--digits", digits, "Digits");
    render->add_option("--depth", depth, "Digit string length k");
    render->add_option("--out", out_path, "Output .ppm")->required();
    render->add_option("--mode", mode, "attractor | split | haar");
    render->add_flag("--auto-depth", auto_depth, "k = ceil(log2(1/eps)/alpha), clamped to the budget");
    render->add_option("--eps", eps, "Target precision for --auto-depth");
    render->add_option("--width", width, "Image width");
    render->add_option("--height", height, "Image height (default: aspect ratio of the attractor)");
    render->add_option("--axes", axes, "Coordinates shown, e.g. 0,2");
    render->add_option("--workers", workers, "Threads");

    int cloud_depth = 8;
    auto* cloud = app.add_subcommand("cloud", "Depth-k point cloud as exact fractions");
    cloud->add_option("poly", poly, "Coefficients, free term first");
    cloud->add_option("--matrix", matrix, "Dilation matrix");
    cloud->add_option("--digits", digits, "Digits");
    cloud->add_option("--depth", cloud_depth, "Digit string length k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(TA_ERR_VALIDATION, e.what());
    }

    char* out = nullptr;
    auto need_source = [&]() -> bool { return !poly.empty() || !matrix.empty() || !digits.empty(); };

    if (*enumerate) return emit(ta_enumerate(degree, deep, meta, workers, &out), &out);

    if (*classify) {
        Poly p;
        if (ta_status s = ta_poly_parse(poly.c_str(), &p.p); s != TA_OK) return fail(s);
        return emit(ta_classify(p.p, &out), &out);
    }

    if (*tile || *holder || *cloud) {
        if (*holder && all_cubics) return emit(ta_holder_all_cubics(&out), &out);
        if (!need_source()) return fail(TA_ERR_VALIDATION, "give a polynomial or --matrix with --digits");
        if ((matrix.empty()) != (digits.empty())) return fail(TA_ERR_VALIDATION, "--matrix and --digits go together");
        System sys;
        if (ta_status s = make_system(poly, matrix, digits, sys); s != TA_OK) return fail(s);
        if (*tile) return emit(ta_tile_check(sys.s, &out), &out);
        if (*holder) return emit(ta_holder(sys.s, &out), &out);
        return emit(ta_point_cloud(sys.s, cloud_depth, &out), &out);
    }

    if (*hull) {
        Poly p;
        if (ta_status s = ta_poly_parse(poly.c_str(), &p.p); s != TA_OK) return fail(s);
        return emit(ta_hull(p.p, depth, &out), &out);
    }

    if (*series) {
        if (sign != "+" && sign != "-") return fail(TA_ERR_VALIDATION, "--sign must be + or -");
        return emit(ta_series(series_tag.c_str(), params.data(), params.size(), sign == "+" ? 1 : -1, override_validity, &out),
                    &out);
    }

    if (*partitions) return emit(ta_partitions(part_d, &out), &out);

    if (*recover) {
        std::ifstream f(seg_file);
        if (!f) return fail(TA_ERR_VALIDATION, "cannot read '" + seg_file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return emit(ta_recover(ss.str().c_str(), dim, &out), &out);
    }

    if (*render) {
        if (!need_source()) return fail(TA_ERR_VALIDATION, "give a polynomial or --matrix with --digits");
        if ((matrix.empty()) != (digits.empty())) return fail(TA_ERR_VALIDATION, "--matrix and --digits go together");
        System sys;
        if (ta_status s = make_system(poly, matrix, digits, sys); s != TA_OK) return fail(s);
        ta_render_options o;
        ta_render_options_init(&o);
        o.depth = depth;
        o.width = width;
        o.height = height;
        o.workers = workers;
        o.auto_depth = auto_depth;
        o.eps = eps;
        if (mode == "attractor") o.mode = TA_RENDER_ATTRACTOR;
        else if (mode == "split") o.mode = TA_RENDER_SPLIT;
        else if (mode == "haar") o.mode = TA_RENDER_HAAR;
        else return fail(TA_ERR_VALIDATION, "unknown mode '" + mode + "' (attractor, split, haar)");
        if (std::sscanf(axes.c_str(), "%d,%d", &o.axis_x, &o.axis_y) != 2)
            return fail(TA_ERR_VALIDATION, "--axes takes two indices, e.g. 0,1");
        ta_status s = ta_render(sys.s, &o, out_path.c_str(), &out);
        if (s != TA_OK) return fail(s);
        const auto j = nlohmann::json::parse(out);
        if (j.contains("warning")) std::cerr << "warning: " << j["warning"].get<std::string>() << "\n";
        return emit(s, &out);
    }
    return fail(TA_ERR_VALIDATION, "no subcommand");
}
