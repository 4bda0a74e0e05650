#include "twoattr/geomzono.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace twoattr {

namespace {

Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational cross(const RationalVector& u, const RationalVector& v) { return u[0] * v[1] - u[1] * v[0]; }

RationalVector to_rational(const IntVector& v)
{
    RationalVector r;
    for (auto x : v) r.emplace_back(x);
    return r;
}

// Nonzero digit of a {0, a} system.
IntVector segment_digit(const DigitSystem& sys)
{
    if (sys.digit_count() != 2) throw ValidationError("hull construction needs exactly two digits");
    const IntVector zero(sys.dim(), 0);
    if (sys.D[0] == zero) return sys.D[1];
    if (sys.D[1] == zero) return sys.D[0];
    throw ValidationError("hull construction needs the digit set {0, a}");
}

std::vector<RationalVector> inverse_orbit(const IntMatrix& M, const IntVector& a, int count)
{
    const RationalMatrix inv = inverse_rational(M);
    std::vector<RationalVector> out;
    RationalVector g = to_rational(a);
    for (int k = 0; k < count; ++k) {
        g = multiply(inv, g);
        out.push_back(g);
    }
    return out;
}

double tail_sum(const IntMatrix& M, const IntVector& a, int depth)
{
    const Eigen::MatrixXd inv = to_eigen(inverse_rational(M));
    const int extra = 64 * static_cast<int>(M.rows());
    Eigen::VectorXd g(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) g(static_cast<Eigen::Index>(i)) = static_cast<double>(a[i]);
    Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(inv.rows(), inv.cols());
    double sum = 0;
    for (int k = 1; k <= depth + extra; ++k) {
        g = inv * g;
        pw = pw * inv;
        if (k > depth) sum += g.norm();
    }
    // sum_{k > depth+extra} |M^{-k} a| <= ||M^{-(depth+extra)}|| * sum_{j>=0} ||M^{-j}|| * |a|
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pw);
    double a_norm = 0;
    for (auto x : a) a_norm += static_cast<double>(x) * static_cast<double>(x);
    const double rest = svd.singularValues()(0) * (1 + inverse_power_norm_sum(M)) * std::sqrt(a_norm);
    return (sum + rest) * (1 + 1e-9);
}

RationalVector sign_normalized(RationalVector v)
{
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

IntMatrix sign_normalized(IntMatrix m)
{
    for (auto x : m.data()) {
        if (x == 0) continue;
        if (x < 0)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
        break;
    }
    return m;
}

std::uint64_t arrangement_regions(std::vector<RationalVector> normals, std::size_t dim)
{
    std::set<std::vector<BigInt>> seen;
    std::vector<RationalVector> uniq;
    for (auto& n : normals)
        if (seen.insert(direction_of(n)).second) uniq.push_back(std::move(n));
    if (uniq.empty()) return 1;
    if (dim == 1) return 2;
    const RationalVector h = uniq.back();
    uniq.pop_back();
    RationalMatrix row(1, dim);
    for (std::size_t j = 0; j < dim; ++j) row(0, j) = h[j];
    const auto basis = kernel(row);
    std::vector<RationalVector> restricted;
    for (const auto& n : uniq) {
        RationalVector r;
        for (const auto& b : basis) r.push_back(dot(b, n));
        restricted.push_back(std::move(r));
    }
    return arrangement_regions(uniq, dim) + arrangement_regions(std::move(restricted), dim - 1);
}

}  // namespace

Zonotope hull_zonotope(const DigitSystem& sys, int depth)
{
    if (depth < 1) throw ValidationError("hull depth must be positive");
    const IntVector a = segment_digit(sys);
    Zonotope z;
    z.dim = sys.dim();
    z.depth = depth;
    z.generators = inverse_orbit(sys.M, a, depth);
    z.center.assign(z.dim, Rational(0));
    for (const auto& g : z.generators)
        for (std::size_t i = 0; i < z.dim; ++i) z.center[i] += g[i] / 2;
    z.tail_bound = tail_sum(sys.M, a, depth);
    return z;
}

std::vector<BigInt> direction_of(const RationalVector& v)
{
    BigInt l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    std::vector<BigInt> out;
    BigInt g = 0;
    for (const auto& x : v) {
        out.push_back(numerator(x) * (l / denominator(x)));
        g = gcd(g, out.back());
    }
    if (g == 0) throw ValidationError("zero vector has no direction");
    for (auto& x : out) x /= g;
    for (const auto& x : out) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : out) y = -y;
        break;
    }
    return out;
}

std::vector<std::vector<BigInt>> distinct_directions(const std::vector<RationalVector>& vs)
{
    std::set<std::vector<BigInt>> s;
    for (const auto& v : vs) s.insert(direction_of(v));
    return {s.begin(), s.end()};
}

std::vector<RationalVector> hull_vertices_2d(const Zonotope& z)
{
    if (z.dim != 2) throw ValidationError("planar hull needs dimension 2");
    std::map<std::vector<BigInt>, RationalVector> merged;
    for (auto g : z.generators) {
        if (g[1] < 0 || (g[1] == 0 && g[0] < 0)) g = {-g[0], -g[1]};
        auto [it, fresh] = merged.try_emplace(direction_of(g), g);
        if (!fresh) {
            it->second[0] += g[0];
            it->second[1] += g[1];
        }
    }
    std::vector<RationalVector> h;
    for (auto& [k, v] : merged) h.push_back(v);
    std::sort(h.begin(), h.end(), [](const RationalVector& u, const RationalVector& v) { return cross(u, v) > 0; });
    RationalVector p = z.center;
    for (const auto& v : h) {
        p[0] -= v[0] / 2;
        p[1] -= v[1] / 2;
    }
    std::vector<RationalVector> out;
    for (int s : {1, -1})
        for (const auto& v : h) {
            out.push_back(p);
            p[0] += s * v[0];
            p[1] += s * v[1];
        }
    return out;
}

std::uint64_t zonotope_vertex_count(const std::vector<RationalVector>& directions, std::size_t dim)
{
    if (dim == 0) throw ValidationError("dimension must be positive");
    for (const auto& d : directions)
        if (d.size() != dim) throw ValidationError("direction length mismatch");
    return arrangement_regions(directions, dim);
}

bool polygon_contains(const std::vector<RationalVector>& polygon, const RationalVector& x)
{
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = polygon[i];
        const auto& b = polygon[(i + 1) % n];
        if (cross({b[0] - a[0], b[1] - a[1]}, {x[0] - a[0], x[1] - a[1]}) < 0) return false;
    }
    return true;
}

std::string PolytopeReport::to_json() const
{
    nlohmann::json j;
    j["polytope"] = polytope;
    j["class"] = cls.name();
    j["predicted_vertices"] = predicted_vertices;
    j["directions"] = directions;
    if (counted_vertices) j["counted_vertices"] = counted_vertices;
    return j.dump(2);
}

PolytopeReport is_polytope_hull(const IntPolynomial& p)
{
    PolytopeReport r;
    r.cls = classify_isotropic(p);
    const int d = p.degree();
    r.polytope = r.cls.kind == AttractorClass::Kind::Parallelepiped || r.cls.kind == AttractorClass::Kind::DragonProduct;
    if (r.polytope) r.predicted_vertices = std::uint64_t{1} << (r.cls.kind == AttractorClass::Kind::Parallelepiped ? d : 3 * d / 2);

    // Directions of M^{-k} e1 repeat exactly when some power of M is scalar.
    const auto sys = DigitSystem::standard(p);
    const auto orbit = inverse_orbit(sys.M, sys.D[1], 16 * d);
    const auto all = distinct_directions(orbit);
    const auto half = distinct_directions({orbit.begin(), orbit.begin() + 8 * d});
    r.directions = all.size();
    const bool stable = all.size() == half.size();
    if (stable != r.polytope)
        throw InternalError("hull of " + p.str() + ": classification " + r.cls.name() + " disagrees with " +
                            std::to_string(all.size()) + " generator directions");
    if (r.polytope && d <= 6) {
        std::vector<RationalVector> dirs;
        for (const auto& v : all) {
            RationalVector q;
            for (const auto& x : v) q.emplace_back(x);
            dirs.push_back(std::move(q));
        }
        r.counted_vertices = zonotope_vertex_count(dirs, static_cast<std::size_t>(d));
        if (r.counted_vertices != r.predicted_vertices)
            throw InternalError("hull of " + p.str() + ": " + std::to_string(r.counted_vertices) + " vertices, expected " +
                                std::to_string(r.predicted_vertices));
    }
    return r;
}

SegmentMultiset parse_segments(std::string_view text)
{
    SegmentMultiset out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string line(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Segment s;
        std::string vec = line;
        if (auto at = line.find('@'); at != std::string::npos) {
            vec = line.substr(0, at);
            std::string m = line.substr(at + 1);
            m.erase(0, m.find_first_not_of(" \t"));
            m.erase(m.find_last_not_of(" \t\r") + 1);
            try {
                std::size_t used = 0;
                const long long v = std::stoll(m, &used);
                if (used != m.size() || v < 1) throw std::invalid_argument(m);
                s.multiplicity = static_cast<std::size_t>(v);
            } catch (const std::exception&) {
                throw ValidationError("segment line " + std::to_string(line_no) + ": bad multiplicity '" + m + "'");
            }
        }
        std::size_t pos = 0;
        while (pos <= vec.size()) {
            const auto comma = vec.find(',', pos);
            std::string part = vec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            part.erase(0, part.find_first_not_of(" \t"));
            part.erase(part.find_last_not_of(" \t\r") + 1);
            s.v.push_back(parse_rational(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (std::all_of(s.v.begin(), s.v.end(), [](const Rational& x) { return x == 0; }))
            throw ValidationError("segment line " + std::to_string(line_no) + ": zero vector");
        out.push_back(std::move(s));
    }
    if (out.empty()) throw ValidationError("no segments");
    return out;
}

SegmentMultiset dilation_segments(const IntMatrix& M, const IntVector& a, int count)
{
    SegmentMultiset out;
    for (auto& v : inverse_orbit(M, a, count)) out.push_back({std::move(v), 1});
    return out;
}

std::string RecoveryResult::to_json() const
{
    nlohmann::json j;
    switch (status) {
    case Status::Recovered: j["status"] = "recovered"; break;
    case Status::Ambiguous: j["status"] = "ambiguous"; break;
    case Status::Unresolved: j["status"] = "unresolved"; break;
    }
    auto& c = j["candidates"] = nlohmann::json::array();
    for (const auto& m : candidates) c.push_back(format_matrix(m));
    j["sign"] = "each candidate M stands for the pair {M, -M}";
    j["fallback"] = fallback;
    if (!note.empty()) j["note"] = note;
    return j.dump(2);
}

RecoveryResult recover_dilation(const SegmentMultiset& segments, std::size_t dim)
{
    if (dim < 1 || dim > 16) throw ValidationError("dimension must be between 1 and 16");
    std::map<RationalVector, std::size_t> count;
    std::size_t n = 0;
    for (const auto& s : segments) {
        if (s.v.size() != dim) throw ValidationError("segment of length " + std::to_string(s.v.size()) + " in dimension " +
                                                     std::to_string(dim));
        if (s.multiplicity == 0) continue;
        count[sign_normalized(s.v)] += s.multiplicity;
        n += s.multiplicity;
    }
    if (n < dim + 2) throw ValidationError("need at least " + std::to_string(dim + 2) + " segments, got " + std::to_string(n));

    std::vector<RationalVector> keys;
    for (const auto& [k, c] : count) keys.push_back(k);
    std::stable_sort(keys.begin(), keys.end(),
                     [](const RationalVector& a, const RationalVector& b) { return dot(a, a) > dot(b, b); });

    std::set<IntMatrix, bool (*)(const IntMatrix&, const IntMatrix&)> found(
        [](const IntMatrix& a, const IntMatrix& b) { return a.data() < b.data(); });

    auto accept = [&](const IntMatrix& M) {
        std::size_t misses = 0;
        for (const auto& [k, c] : count) {
            auto it = count.find(sign_normalized(multiply(to_rational(M), k)));
            const std::size_t have = it == count.end() ? 0 : it->second;
            if (c > have) misses += c - have;
            if (misses > 1) return false;
        }
        return is_expanding(char_poly(M));
    };

    // M w_{i+1} = +-w_i for the chain w_0, ..., w_dim; every head in `heads` is tried as w_0.
    auto try_chain = [&](std::vector<const RationalVector*> w, const std::vector<const RationalVector*>& heads) {
        RationalMatrix W(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < dim; ++i) W(i, j) = (*w[j + 1])[i];
        if (rank(W) < dim) return;
        const RationalMatrix Winv = inverse_rational(W);
        for (const auto* head : heads) {
            w[0] = head;
            for (std::uint32_t signs = 0; signs < (1u << dim); ++signs) {
                IntMatrix M(dim, dim);
                bool integral = true;
                for (std::size_t i = 0; i < dim && integral; ++i)
                    for (std::size_t j = 0; j < dim && integral; ++j) {
                        Rational s = 0;
                        for (std::size_t t = 0; t < dim; ++t) {
                            const Rational r = (*w[t])[i] * Winv(t, j);
                            s += (signs >> t) & 1u ? Rational(-r) : r;
                        }
                        if (!is_integer(s) || abs(numerator(s)) > BigInt(INT64_MAX)) integral = false;
                        else M(i, j) = static_cast<std::int64_t>(numerator(s));
                    }
                if (!integral) continue;
                M = sign_normalized(M);
                if (found.count(M) == 0 && accept(M)) found.insert(M);
            }
        }
    };

    RecoveryResult res;

    // Length order: tie groups touching the first dim + 1 positions are permuted.
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in keys
    for (std::size_t i = 0; i <= dim && i < keys.size();) {
        std::size_t j = i + 1;
        while (j < keys.size() && dot(keys[j], keys[j]) == dot(keys[i], keys[i])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    std::size_t orderings = 1;
    bool capped = false;
    for (auto [b, e] : groups)
        for (std::size_t f = 2; f <= e - b; ++f) {
            orderings *= f;
            if (orderings > kMaxTieOrderings) capped = true;
        }
    if (keys.size() >= dim + 1 && !capped) {
        std::vector<std::vector<std::size_t>> perms;
        for (auto [b, e] : groups) {
            std::vector<std::size_t> p(e - b);
            for (std::size_t t = 0; t < p.size(); ++t) p[t] = b + t;
            perms.push_back(std::move(p));
        }
        std::set<std::vector<std::size_t>> prefixes;
        while (true) {
            std::vector<std::size_t> order;
            for (const auto& p : perms) order.insert(order.end(), p.begin(), p.end());
            order.resize(dim + 1);
            prefixes.insert(order);
            std::size_t g = 0;
            for (; g < perms.size(); ++g)
                if (std::next_permutation(perms[g].begin(), perms[g].end())) break;
            if (g == perms.size()) break;
        }
        for (const auto& order : prefixes) {
            std::vector<const RationalVector*> w;
            for (auto i : order) w.push_back(&keys[i]);
            try_chain(w, {w[0]});
        }
    }

    // Tuple search among the longest segments, for inputs whose lengths do not
    // decrease along the orbit.
    if (found.empty() && keys.size() >= dim + 1) {
        res.fallback = true;
        const std::size_t pool = std::min(keys.size(), 3 * dim + 3);
        std::vector<std::size_t> idx(dim, 0);
        std::vector<const RationalVector*> w(dim + 1);
        // Odometer over ordered tuples (w_1, ..., w_dim) of distinct pool entries.
        while (true) {
            std::set<std::size_t> distinct(idx.begin(), idx.end());
            if (distinct.size() == idx.size()) {
                std::vector<const RationalVector*> heads;
                for (std::size_t h = 0; h < pool; ++h)
                    if (!distinct.count(h)) heads.push_back(&keys[h]);
                for (std::size_t t = 0; t < dim; ++t) w[t + 1] = &keys[idx[t]];
                try_chain(w, heads);
            }
            std::size_t t = 0;
            for (; t < dim; ++t) {
                if (++idx[t] < pool) break;
                idx[t] = 0;
            }
            if (t == dim) break;
        }
    }

    res.candidates.assign(found.begin(), found.end());
    if (res.candidates.size() == 1) {
        res.status = RecoveryResult::Status::Recovered;
    } else if (res.candidates.size() > 1) {
        res.status = RecoveryResult::Status::Ambiguous;
        res.note = "several dilations generate the same segment family";
    } else {
        res.status = capped ? RecoveryResult::Status::Ambiguous : RecoveryResult::Status::Unresolved;
        res.note = capped ? "equal-length groups exceed " + std::to_string(kMaxTieOrderings) + " orderings"
                          : "no integer expanding dilation maps the segments onto themselves";
    }
    return res;
}

}  // namespace twoattr
