#include "twoattr/twoattr.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "twoattr/attract.hpp"
#include "twoattr/enumeration.hpp"
#include "twoattr/geomzono.hpp"
#include "twoattr/regularity.hpp"
#include "twoattr/render.hpp"
#include "twoattr/series.hpp"
#include "twoattr/tiling.hpp"

struct ta_poly {
    twoattr::IntPolynomial p;
};

struct ta_system {
    twoattr::DigitSystem sys;
};

namespace {

using namespace twoattr;
using nlohmann::json;

thread_local std::string g_last_error;

template <class F>
ta_status guard(F&& f)
{
    g_last_error.clear();
    try {
        f();
        return TA_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<ta_status>(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TA_ERR_BUDGET;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TA_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return TA_ERR_INTERNAL;
    }
}

char* dup(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class T>
void need(const T* p, const char* what)
{
    if (!p) throw ValidationError(std::string(what) + " is null");
}

// Table 2 order.
const char* const kCubics[] = {"2,2,2,1", "2,1,1,1", "2,0,0,1", "2,-1,-1,1", "2,-1,0,1", "2,-2,0,1", "2,0,1,1"};

json rational_json(const RationalVector& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

}  // namespace

extern "C" {

const char* ta_last_error(void) { return g_last_error.c_str(); }

const char* ta_version(void) { return "1.0.0"; }

void ta_string_free(char* s) { delete[] s; }

ta_status ta_poly_parse(const char* text, ta_poly** out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = new ta_poly{IntPolynomial::parse(text)};
    });
}

void ta_poly_free(ta_poly* p) { delete p; }

ta_status ta_poly_str(const ta_poly* p, char** out)
{
    return guard([&] {
        need(p, "polynomial");
        need(out, "out");
        *out = dup(p->p.str());
    });
}

ta_status ta_poly_is_expanding(const ta_poly* p, int* out)
{
    return guard([&] {
        need(p, "polynomial");
        need(out, "out");
        *out = is_expanding(p->p) ? 1 : 0;
    });
}

ta_status ta_system_from_poly(const ta_poly* p, ta_system** out)
{
    return guard([&] {
        need(p, "polynomial");
        need(out, "out");
        *out = new ta_system{DigitSystem::standard(p->p)};
    });
}

ta_status ta_system_parse(const char* matrix, const char* digits, ta_system** out)
{
    return guard([&] {
        need(matrix, "matrix");
        need(digits, "digits");
        need(out, "out");
        *out = new ta_system{DigitSystem::parse(matrix, digits)};
    });
}

void ta_system_free(ta_system* s) { delete s; }

ta_status ta_classify(const ta_poly* p, char** out)
{
    return guard([&] {
        need(p, "polynomial");
        need(out, "out");
        const IntPolynomial& q = p->p;
        json j;
        j["polynomial"] = q.str();
        j["pretty"] = q.pretty();
        j["admissible"] = is_admissible(q);
        j["expanding"] = is_expanding(q);
        if (!is_admissible(q) || !is_expanding(q))
            throw ValidationError(q.str() + " is not an admissible expanding polynomial");
        j["isotropic"] = is_isotropic(q);
        j["class"] = classify_isotropic(q).name();
        j["class_key"] = class_key(q).str();
        j["opposite"] = opposite(q).str();
        j["self_opposite"] = opposite(q) == q;
        *out = dup(j.dump(2));
    });
}

ta_status ta_tile_check(const ta_system* s, char** out)
{
    return guard([&] {
        need(s, "system");
        need(out, "out");
        const MeasureResult mr = measure(s->sys);
        const TileVerdict v = tile_check(s->sys);
        json j;
        j["matrix"] = format_matrix(s->sys.M);
        j["tile"] = v.tile;
        j["measure"] = v.measure;
        j["measure_value"] = mr.value;
        j["measure_exact"] = mr.exact;
        j["gamma_size"] = v.gamma_size;
        j["rho_without_zero"] = v.rho_without_zero;
        j["lattice_index"] = v.lattice_index;
        *out = dup(j.dump(2));
    });
}

ta_status ta_holder(const ta_system* s, char** out)
{
    return guard([&] {
        need(s, "system");
        need(out, "out");
        *out = dup(json::parse(holder_exponent(s->sys).to_json()).dump(2));
    });
}

ta_status ta_holder_all_cubics(char** out)
{
    return guard([&] {
        need(out, "out");
        json rows = json::array();
        int type = 1;
        for (const char* c : kCubics) {
            const IntPolynomial p = IntPolynomial::parse(c);
            json r = json::parse(holder_exponent(p).to_json());
            r["type"] = type++;
            r["pretty"] = p.pretty();
            rows.push_back(std::move(r));
        }
        *out = dup(rows.dump(2));
    });
}

ta_status ta_hull(const ta_poly* p, int depth, char** out)
{
    return guard([&] {
        need(p, "polynomial");
        need(out, "out");
        const DigitSystem sys = DigitSystem::standard(p->p);
        const Zonotope z = hull_zonotope(sys, depth);
        const PolytopeReport rep = is_polytope_hull(p->p);
        json j;
        j["polynomial"] = p->p.str();
        j["depth"] = depth;
        j["tail_bound"] = z.tail_bound;
        j["center"] = rational_json(z.center);
        json gens = json::array();
        for (const auto& g : z.generators) gens.push_back(rational_json(g));
        j["generators"] = gens;
        j["generator_directions"] = distinct_directions(z.generators).size();
        if (z.dim == 2) {
            json verts = json::array();
            for (const auto& v : hull_vertices_2d(z)) verts.push_back(rational_json(v));
            j["vertex_count"] = verts.size();
            j["vertices"] = verts;
        }
        j["polytope"] = json::parse(rep.to_json());
        *out = dup(j.dump(2));
    });
}

ta_status ta_enumerate(int degree, int deep, int with_metadata, unsigned workers, char** out)
{
    return guard([&] {
        need(out, "out");
        Catalog c = enumerate_expanding(degree, workers, deep != 0);
        if (with_metadata) annotate(c);
        json j = json::parse(c.to_json());
        if (degree >= 3) j["upper_bound_log2"] = theoretical_upper_bound_log2(degree);
        *out = dup(j.dump(2));
    });
}

ta_status ta_series(const char* tag, const int* params, size_t n_params, int sign, int override_validity, char** out)
{
    return guard([&] {
        need(tag, "tag");
        need(out, "out");
        if (n_params && !params) throw ValidationError("params is null");
        SeriesId id{parse_series_tag(tag), std::vector<int>(params, params + n_params), sign};
        const auto violation = series_violation(id);
        const IntPolynomial p = generate(id, override_validity != 0);
        json j;
        j["id"] = id.str();
        j["polynomial"] = p.str();
        j["pretty"] = p.pretty();
        j["degree"] = p.degree();
        j["admissible"] = is_admissible(p);
        j["expanding"] = is_expanding(p);
        if (violation) j["violated"] = *violation;
        *out = dup(j.dump(2));
    });
}

ta_status ta_partitions(int64_t d, char** out)
{
    return guard([&] {
        need(out, "out");
        if (d < 3 || d > 100000) throw ValidationError("d must lie in 3..100000");
        json j;
        j["d"] = d;
        const std::int64_t b = count_partitions3(d);
        j["b"] = b;
        j["b_round"] = std::llround(static_cast<double>(d) * static_cast<double>(d) / 12.0);
        j["b_plus"] = count_good_partitions(d);
        j["b_plus_formula"] = good_partitions_formula(d);
        const Bounds tp = three_part_bounds(d);
        j["three_part_bounds"] = {tp.lo, tp.hi};
        j["three_part_bounds_hold"] = tp.contains(static_cast<double>(b));
        j["omega"] = three_part_omega(d);
        if (d % 3 == 0) {
            const Bounds sb = ser4_bounds(d);
            j["ser4_bounds"] = {sb.lo, sb.hi};
            j["ser4_bounds_hold"] = sb.contains(static_cast<double>(count_good_partitions(d)));
        }
        *out = dup(j.dump(2));
    });
}

ta_status ta_recover(const char* segments, size_t dim, char** out)
{
    return guard([&] {
        need(segments, "segments");
        need(out, "out");
        *out = dup(recover_dilation(parse_segments(segments), dim).to_json());
    });
}

ta_status ta_point_cloud(const ta_system* s, int depth, char** out)
{
    return guard([&] {
        need(s, "system");
        need(out, "out");
        *out = dup(point_cloud(s->sys, depth).to_text());
    });
}

void ta_render_options_init(ta_render_options* o)
{
    if (!o) return;
    *o = ta_render_options{};
    o->depth = 12;
    o->width = 512;
    o->height = 0;
    o->mode = TA_RENDER_ATTRACTOR;
    o->workers = 1;
    o->auto_depth = 0;
    o->eps = 1.0 / 32;
    o->axis_x = 0;
    o->axis_y = 1;
    o->budget = kDefaultPointBudget;
}

ta_status ta_render(const ta_system* s, const ta_render_options* o, const char* out_path, char** out)
{
    return guard([&] {
        need(s, "system");
        need(o, "options");
        need(out_path, "output path");
        RenderJob job;
        job.sys = s->sys;
        job.width = o->width;
        job.height = o->height;
        job.workers = o->workers;
        job.budget = o->budget ? o->budget : kDefaultPointBudget;
        switch (o->mode) {
        case TA_RENDER_ATTRACTOR: job.mode = RenderMode::Attractor; break;
        case TA_RENDER_SPLIT: job.mode = RenderMode::Split; break;
        case TA_RENDER_HAAR: job.mode = RenderMode::Haar; break;
        default: throw ValidationError("unknown render mode");
        }
        const std::size_t d = s->sys.dim();
        if (o->axis_x < 0 || o->axis_y < 0 || static_cast<std::size_t>(o->axis_x) >= d ||
            static_cast<std::size_t>(o->axis_y) >= d || o->axis_x == o->axis_y)
            throw ValidationError("axes must be two distinct coordinates below " + std::to_string(d));
        job.projection = RationalMatrix(2, d);
        job.projection(0, static_cast<std::size_t>(o->axis_x)) = 1;
        job.projection(1, static_cast<std::size_t>(o->axis_y)) = 1;
        if (o->has_viewport) job.viewport = Viewport{o->xmin, o->xmax, o->ymin, o->ymax};
        json j;
        job.depth = o->depth;
        if (o->auto_depth) {
            const AutoDepth ad = auto_depth(s->sys, o->eps, job.budget);
            j["alpha"] = ad.alpha;
            j["auto_depth"] = ad.depth;
            job.depth = ad.depth;
            if (ad.clamped()) {
                job.depth = ad.affordable;
                j["warning"] = "auto depth " + std::to_string(ad.depth) + " exceeds the point budget; rendered at depth " +
                               std::to_string(ad.affordable) + ", reaching eps ~ 2^-" +
                               std::to_string(ad.affordable * ad.alpha) + " instead of " + std::to_string(o->eps);
            }
        }
        RenderStats st;
        const Image img = render(job, &st);
        write_ppm(img, out_path);
        j["out"] = out_path;
        j["depth"] = job.depth;
        j["mode"] = render_mode_name(job.mode);
        j["width"] = img.width;
        j["height"] = img.height;
        j["points"] = st.points;
        j["points_per_digit"] = st.points_per_digit;
        j["pixels_set"] = st.pixels_set;
        j["viewport"] = {st.viewport.xmin, st.viewport.xmax, st.viewport.ymin, st.viewport.ymax};
        if (out) *out = dup(j.dump(2));
    });
}

ta_status ta_auto_depth(const ta_system* s, double eps, char** out)
{
    return guard([&] {
        need(s, "system");
        need(out, "out");
        const AutoDepth ad = auto_depth(s->sys, eps);
        json j;
        j["eps"] = eps;
        j["alpha"] = ad.alpha;
        j["depth"] = ad.depth;
        j["affordable"] = ad.affordable;
        j["clamped"] = ad.clamped();
        *out = dup(j.dump(2));
    });
}

}  // extern "C"
