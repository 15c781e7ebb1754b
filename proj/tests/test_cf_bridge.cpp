#include "eudoxus/cf_bridge.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace eudoxus;

namespace {

EndoPtr sqrt2_node() { return cf_to_endo(CFSeq::periodic({Int(1)}, {Int(2)})); }

/// A bounded (zero-class) node: 1/2 + 1/2 - 1.
EndoPtr zero_class() {
    return add(add(EndoNode::rat_slope(1, 2), EndoNode::rat_slope(1, 2)),
               neg(EndoNode::int_slope(1)));
}

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("convergents follow the recurrence and the determinant identity") {
    auto cs = convergents(CFSeq(ints({1, 2, 2, 2})), 4);
    REQUIRE(cs.size() == 4);
    CHECK((cs[0].p == 1 && cs[0].q == 1));
    CHECK((cs[1].p == 3 && cs[1].q == 2));
    CHECK((cs[2].p == 7 && cs[2].q == 5));
    CHECK((cs[3].p == 17 && cs[3].q == 12));
    CHECK(Int(17) * 5 - Int(7) * 12 == 1);  // (-1)^4

    auto single = convergents(CFSeq(ints({-6})), 1);
    CHECK((single[0].p == -6 && single[0].q == 1));

    CHECK_THROWS_AS(convergents(CFSeq(ints({1, 2})), 3), FiniteExhausted);

    SECTION("identity holds across a long periodic expansion") {
        auto cs2 = convergents(CFSeq::periodic({Int(1)}, {Int(2)}), 40);
        for (std::size_t i = 0; i + 1 < cs2.size(); ++i) {
            Int det = cs2[i + 1].p * cs2[i].q - cs2[i].p * cs2[i + 1].q;
            CHECK(det == ((cs2[i].index % 2 == 0) ? 1 : -1));  // (-1)^{n+1}
        }
    }
}

TEST_CASE("cf_to_endo realizes the CF's value") {
    auto two = cf_to_endo(CFSeq(ints({2})));
    auto is2 = EndoNode::int_slope(2);
    for (long x = 1; x <= 200; ++x) CHECK(two->eval(x) == is2->eval(x));

    CHECK(to_decimal(sqrt2_node(), 12) == "1.414213562373 ±1e-12");

    SECTION("all-ones CF approximates the golden ratio") {
        auto phi = cf_to_endo(CFSeq::periodic({}, {Int(1)}));
        CertifiedApprox ap = phi->approx(pow10(6));
        Int lo = oracle::isqrt(Int(5) * pow10(40));  // floor(sqrt5 * 10^20)
        Rat phi_lo = (Rat(lo, pow10(20)) + 1) / 2;
        Rat phi_hi = (Rat(lo + 1, pow10(20)) + 1) / 2;
        CHECK(ap.lower() <= phi_lo);
        CHECK(phi_hi <= ap.upper());
    }
}

TEST_CASE("integer_part isolates the floor of the slope") {
    Fuel fuel{64};
    auto ip = integer_part(EndoNode::rat_slope(7, 2), fuel);
    REQUIRE(ip.has_value());
    CHECK(*ip == 3);

    ip = integer_part(EndoNode::int_slope(4), fuel);  // boundary: slope exactly 4
    REQUIRE(ip.has_value());
    CHECK(*ip == 4);

    ip = integer_part(sqrt2_node(), fuel);
    REQUIRE(ip.has_value());
    CHECK(*ip == 1);

    SECTION("negative slopes") {
        ip = integer_part(EndoNode::rat_slope(-7, 2), fuel);
        REQUIRE(ip.has_value());
        CHECK(*ip == -4);  // floor(-3.5)
        ip = integer_part(EndoNode::int_slope(-4), fuel);
        REQUIRE(ip.has_value());
        CHECK(*ip == -4);
    }
}

TEST_CASE("endo_to_cf extracts digits and certifies termination") {
    Fuel fuel{64};

    SECTION("rational slope, slow path, against the Euclid oracle") {
        auto ext = endo_to_cf(EndoNode::rat_slope(7, 2), 5, fuel);
        CHECK(ext.flag == CFExtraction::Flag::Terminated);
        CHECK(ext.terms == oracle::cf_of_rational(7, 2));  // [3; 2]

        auto ext2 = endo_to_cf(EndoNode::rat_slope(355, 113), 8, fuel);
        CHECK(ext2.flag == CFExtraction::Flag::Terminated);
        CHECK(ext2.terms == oracle::cf_of_rational(355, 113));
    }

    SECTION("integer slope terminates immediately") {
        auto ext = endo_to_cf(EndoNode::int_slope(5), 3, fuel);
        CHECK(ext.flag == CFExtraction::Flag::Terminated);
        CHECK(ext.terms == ints({5}));
    }

    SECTION("CFPiecewise inputs short-circuit to stored terms") {
        auto ext = endo_to_cf(cf_to_endo(CFSeq(ints({1, 2, 2, 2, 2, 2, 2, 2}))), 4, fuel);
        CHECK(ext.flag == CFExtraction::Flag::Prefix);
        CHECK(ext.terms == ints({1, 2, 2, 2}));

        auto all = endo_to_cf(cf_to_endo(CFSeq(ints({3, 1, 4}))), 8, fuel);
        CHECK(all.flag == CFExtraction::Flag::Terminated);
        CHECK(all.terms == ints({3, 1, 4}));
    }

    SECTION("slow path agrees with the fast path under a bounded perturbation") {
        // Sum with a zero-class node defeats the structural match but stays
        // in the same equivalence class, so the digits cannot change.
        auto perturbed = add(sqrt2_node(), zero_class());
        auto slow = endo_to_cf(perturbed, 3, Fuel{48});
        CHECK(slow.terms == ints({1, 2, 2}));

        auto pr = add(EndoNode::rat_slope(7, 2), zero_class());
        auto slow2 = endo_to_cf(pr, 5, Fuel{48});
        CHECK(slow2.flag == CFExtraction::Flag::Terminated);
        CHECK(slow2.terms == ints({3, 2}));
    }

    SECTION("round trip on random finite CFs through the piecewise node") {
        std::mt19937_64 rng(2023);
        for (int t = 0; t < 20; ++t) {
            std::vector<Int> terms;
            for (int i = 0; i < 8; ++i)
                terms.emplace_back(std::uniform_int_distribution<long>(1, 9)(rng));
            auto ext = endo_to_cf(cf_to_endo(CFSeq(terms)), 8, fuel);
            CHECK(ext.terms == terms);
        }
    }
}

TEST_CASE("stored-CF inverse matches the reciprocal convergent rule") {
    // For f = floor(P_n x / Q_n) the inverse is floor(x Q_n / P_n) piecewise
    // on P_n <= x < P_{n+1}, within 1.
    auto f = cf_to_endo(CFSeq(ints({1, 2, 2, 2, 2, 2})));
    auto g = invert(f, Fuel{32});
    auto cs = convergents(CFSeq(ints({1, 2, 2, 2, 2, 2})), 6);
    for (long x = 1; x <= 400; ++x) {
        std::size_t i = 0;
        while (i + 1 < cs.size() && cs[i + 1].p <= x) ++i;
        Int expected = floor_div(Int(x) * cs[i].q, cs[i].p);
        CHECK(abs(g->eval(x) - expected) <= 1);
    }
}

TEST_CASE("diagonal differs from every row at its defined position") {
    std::vector<CFSeq> rows{CFSeq::periodic({}, {Int(1)}), CFSeq::periodic({}, {Int(2)}),
                            CFSeq(ints({5}))};
    CFSeq d = diagonal(rows, 3);
    CHECK(*d.term(0) == 2);
    CHECK(*d.term(1) == 3);
    CHECK(*d.term(2) == 1);  // row [5] has no index-2 term

    SECTION("all rows empty uses the fallback") {
        CFSeq d2 = diagonal({}, 4);
        for (std::size_t i = 0; i < 4; ++i) CHECK(*d2.term(i) == 1);
    }

    SECTION("distinctness on random rows") {
        std::mt19937_64 rng(5);
        std::vector<CFSeq> rs;
        for (int i = 0; i < 50; ++i) {
            std::vector<Int> terms{Int(std::uniform_int_distribution<long>(-9, 9)(rng))};
            int len = std::uniform_int_distribution<int>(0, 60)(rng);
            for (int j = 0; j < len; ++j)
                terms.emplace_back(std::uniform_int_distribution<long>(1, 9)(rng));
            rs.emplace_back(CFSeq(terms));
        }
        CFSeq d3 = diagonal(rs, 50);
        for (std::size_t i = 0; i < 50; ++i) {
            auto row_term = rs[i].term(i);
            if (row_term) CHECK(*d3.term(i) != *row_term);
            else CHECK(*d3.term(i) == 1);
        }
    }
}
