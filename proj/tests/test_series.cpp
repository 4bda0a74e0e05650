#include <cmath>
#include <map>

#include "doctest.h"
#include "twoattr/series.hpp"

using namespace twoattr;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

IntPolynomial one_plus(int n, int sign = 1) { return IntPolynomial::monomial(0) + IntPolynomial::monomial(n, sign); }

SeriesId id(SeriesTag t, std::vector<int> p, int sign = 1) { return SeriesId{t, std::move(p), sign}; }

std::int64_t brute_b(std::int64_t d)
{
    std::int64_t n = 0;
    for (std::int64_t a = 1; 3 * a <= d; ++a)
        for (std::int64_t b = a; a + 2 * b <= d; ++b) ++n;
    return n;
}

}  // namespace

TEST_CASE("generate")
{
    CHECK(generate(id(SeriesTag::S3a, {1, 1})) == P("2,2,1"));
    CHECK(generate(id(SeriesTag::S6, {1, 1}, 1)) == P("2,2,2,1"));
    CHECK(generate(id(SeriesTag::S1a, {2, 1})) == P("2,1"));
    CHECK_THROWS_AS(generate(id(SeriesTag::S4a, {1, 1, 1})), ValidationError);
    try {
        generate(id(SeriesTag::S4a, {1, 1, 1}));
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("series 4a is (1 + z^m)(1 + z^q)(1 + z^k) + 1")
{
    for (auto [m, q, k] : {std::tuple{1, 2, 3}, std::tuple{1, 1, 2}, std::tuple{2, 3, 4}}) {
        const IntPolynomial want = one_plus(m) * one_plus(q) * one_plus(k) + IntPolynomial::monomial(0);
        CHECK(generate(id(SeriesTag::S4a, {m, q, k})) == want);
    }
}

TEST_CASE("series 6 is (1 + z^m)(1 +- z^r + z^{2r}) + 1")
{
    for (int sign : {1, -1})
        for (auto [m, r] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{3, 1}}) {
            const IntPolynomial tri = IntPolynomial::monomial(0) + IntPolynomial::monomial(r, sign) + IntPolynomial::monomial(2 * r);
            const SeriesId s = id(SeriesTag::S6, {m, r}, sign);
            if (series_violation(s)) continue;
            CHECK(generate(s) == one_plus(m) * tri + IntPolynomial::monomial(0));
        }
}

TEST_CASE("override generates invalid members")
{
    const IntPolynomial p = generate(id(SeriesTag::S4a, {1, 1, 1}), true);
    CHECK(p == P("2,3,3,1"));
    CHECK_FALSE(is_expanding(p));  // z = e^{2i pi/3} is a root
}

TEST_CASE("series tags")
{
    CHECK(parse_series_tag("4b") == SeriesTag::S4b);
    CHECK(parse_series_tag("S7") == SeriesTag::S7);
    CHECK_THROWS_AS(parse_series_tag("8"), ValidationError);
    CHECK(all_series_tags().size() == 12);
    for (SeriesTag t : all_series_tags()) CHECK(parse_series_tag(series_name(t)) == t);
    CHECK_THROWS_AS(generate(id(SeriesTag::S3a, {1, 2, 3})), ValidationError);
}

TEST_CASE("every grid member is an admissible expanding polynomial")
{
    const auto grid = series_grid(12);
    std::map<SeriesTag, std::size_t> per_tag;
    std::size_t failures = 0;
    for (const auto& s : grid) {
        INFO(s.str());
        const IntPolynomial p = generate(s);
        // series 5 runs over m, q <= 5 and reaches degree 18
        if (s.tag != SeriesTag::S5) CHECK(p.degree() <= 12);
        CHECK(is_admissible(p));
        if (!is_expanding(p)) ++failures;
        ++per_tag[s.tag];
    }
    CHECK(failures == 0);
    for (SeriesTag t : all_series_tags()) CHECK(per_tag[t] > 0);
}

TEST_CASE("series 4b unit-root clause")
{
    // (1 - z)^2 (1 + z^4) + 1 vanishes at e^{i pi/3}
    CHECK(series4b_unit_root(1, 1, 4));
    SeriesId s = id(SeriesTag::S4b, {1, 1, 4});
    CHECK(series_violation(s));
    CHECK_FALSE(is_expanding(generate(s, true)));
    // on the grid the clause coincides with the expanding test
    for (int m = 1; m <= 11; ++m)
        for (int q = 1; q <= 11; ++q)
            for (int k = 1; m + q + k <= 12; ++k) {
                s = id(SeriesTag::S4b, {m, q, k});
                if (!series_violation(s)) CHECK(is_expanding(generate(s)));
            }
}

TEST_CASE("is_bad_vector")
{
    CHECK(is_bad_vector(1, 1, 1));
    CHECK_FALSE(is_bad_vector(1, 2, 3));
    CHECK(is_bad_vector(3, 3, 3));
    CHECK(is_bad_vector(2, 2, 5));
    CHECK_FALSE(is_bad_vector(3, 6, 9));
    CHECK(is_bad_vector(9, 9, 36));
}

TEST_CASE("count_partitions3")
{
    CHECK(count_partitions3(3) == 1);
    CHECK(count_partitions3(9) == 7);
    CHECK(count_partitions3(10) == 8);
    for (std::int64_t d = 0; d <= 200; ++d) {
        CHECK(count_partitions3(d) == brute_b(d));
        CHECK(count_partitions3(d) == std::llround(double(d * d) / 12.0));
    }
}

TEST_CASE("count_partitions3_nonneg")
{
    // (0,0,2), (0,1,1)
    CHECK(count_partitions3_nonneg(2) == 2);
    for (std::int64_t n = 0; n <= 50; ++n) CHECK(count_partitions3_nonneg(n) == brute_b(n + 3));
}

TEST_CASE("count_good_partitions")
{
    CHECK(count_good_partitions(9) == 3);
    CHECK(count_good_partitions(5) == 2);
    CHECK(count_good_partitions(3) == 0);
    for (std::int64_t d = 3; d <= 120; ++d) {
        CHECK(good_partitions_brute(d) == good_partitions_formula(d));
        if (d % 3 != 0) CHECK(count_good_partitions(d) == count_partitions3(d));
    }
}

TEST_CASE("good-partition bounds for d divisible by 3")
{
    for (std::int64_t d = 3; d <= 120; d += 3) CHECK(ser4_bounds(d).contains(double(count_good_partitions(d))));
}

TEST_CASE("three-part bounds fail at d = 9 and d = 11")
{
    CHECK(count_partitions3(9) == 7);
    CHECK_FALSE(three_part_bounds(9).contains(7));
    CHECK(three_part_bounds(9).hi == doctest::Approx(6.5));
    CHECK(count_partitions3(11) == 10);
    CHECK(three_part_omega(11) == doctest::Approx(10 - 110.0 / 12));
    CHECK(three_part_omega(11) > 0.5);
}
