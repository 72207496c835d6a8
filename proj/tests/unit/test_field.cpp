#include "doctest.h"
#include "ffpm/field.hpp"
#include "oracles.hpp"

using namespace ffpm;

namespace {

oracle::NaiveField naive(const Field& f) { return {f.p(), f.r(), f.spec().modulus}; }

}  // namespace

TEST_CASE("prime field arithmetic") {
    const auto f2 = Field::of_order(2);
    CHECK(f2->add(1, 1) == 0);
    CHECK(f2->inv(1) == 1);
    const auto f5 = Field::of_order(5);
    CHECK(f5->add(3, 4) == 2);
    CHECK(f5->mul(2, 3) == 1);
    CHECK(f5->inv(2) == 3);
    const auto f3 = Field::of_order(3);
    CHECK(f3->mul(0, 2) == 0);
    CHECK(f3->pow(2, 2) == 1);
}

TEST_CASE("GF(4) with t^2 + t + 1") {
    const auto f = Field::make(FieldSpec::parse("p=2 r=2 modulus=1,1,1"));
    const Elem t = 2;
    const Elem t1 = 3;
    CHECK(f->elements() == std::vector<Elem>{0, 1, 2, 3});
    CHECK(f->add(t, t1) == 1);
    CHECK(f->mul(t, t) == t1);
    CHECK(f->inv(t) == t1);
    CHECK(f->pow(t, 4) == t);
    CHECK(f->format(t) == "0,1");
    CHECK(f->parse("1,1") == t1);
    CHECK(f->spec() == FieldSpec::for_order(4));
}

TEST_CASE("zero conventions and errors") {
    for (const std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
        const auto f = Field::of_order(q);
        CHECK(f->pow(0, 0) == 1);
        CHECK(f->pow(0, 3) == 0);
        CHECK_THROWS_AS(f->inv(0), DivisionByZero);
    }
}

TEST_CASE("default moduli are the lowest irreducibles") {
    CHECK(lowest_irreducible(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(lowest_irreducible(2, 3) == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(lowest_irreducible(3, 2) == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(lowest_irreducible(2, 4) == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    CHECK(lowest_irreducible(5, 2) == std::vector<std::uint32_t>{2, 0, 1});
    CHECK(lowest_irreducible(3, 3) == std::vector<std::uint32_t>{1, 2, 0, 1});
    const std::vector<std::uint32_t> t2_plus_1{1, 0, 1};
    CHECK_FALSE(is_irreducible(2, t2_plus_1));
    CHECK(is_irreducible(3, t2_plus_1));
}

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(Field::make(FieldSpec::parse("p=2 r=2 modulus=1,0,1")), SpecError);
    CHECK_THROWS_AS(Field::make(FieldSpec::parse("p=4 r=1")), SpecError);
    CHECK_THROWS_AS(Field::make(FieldSpec::parse("p=2 r=2 modulus=1,1,0")), SpecError);
    CHECK_THROWS_AS(FieldSpec::parse("p=2 r=2 bogus=1"), ParseError);
    CHECK_THROWS_AS(Field::of_order(6), SpecError);
    CHECK_THROWS_AS(Field::of_order(1), SpecError);
    CHECK(FieldSpec::parse("p=5 r=1").q() == 5);
    const auto spec = FieldSpec::parse("p=3 r=2 modulus=2,2,1");
    CHECK(FieldSpec::parse(spec.to_string()) == spec);
    CHECK_NOTHROW(Field::make(spec));
}

TEST_CASE("tables agree with schoolbook arithmetic") {
    for (const std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
        const auto f = Field::of_order(q);
        const auto g = naive(*f);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f->neg(a) == g.neg(a));
            if (a != 0) CHECK(f->inv(a) == g.inv(a));
            for (Elem b = 0; b < q; ++b) {
                REQUIRE(f->add(a, b) == g.add(a, b));
                REQUIRE(f->mul(a, b) == g.mul(a, b));
            }
        }
    }
}

TEST_CASE("a second modulus for GF(9) works too") {
    const auto f = Field::make(FieldSpec::parse("p=3 r=2 modulus=2,1,1"));
    const auto g = naive(*f);
    for (Elem a = 0; a < 9; ++a) {
        for (Elem b = 0; b < 9; ++b) CHECK(f->mul(a, b) == g.mul(a, b));
    }
}

TEST_CASE("field axioms on small fields") {
    for (const std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
        const auto f = Field::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            CHECK(f->pow(a, q) == a);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (Elem c = 0; c < q; ++c) {
                    REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("multiplication by a nonzero scalar permutes the field") {
    for (const std::uint64_t q : {4, 7, 9}) {
        const auto f = Field::of_order(q);
        for (Elem l = 1; l < q; ++l) {
            std::vector<bool> hit(q, false);
            for (Elem x = 0; x < q; ++x) hit[f->mul(l, x)] = true;
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("power sums") {
    for (const std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        const auto f = Field::of_order(q);
        for (std::uint64_t e = 1; e <= 2 * q; ++e) {
            Elem s = 0;
            for (Elem x = 0; x < q; ++x) s = f->add(s, f->pow(x, e));
            const Elem expected = e % (q - 1) == 0 ? f->neg(1) : 0;
            CHECK(s == expected);
        }
    }
}

TEST_CASE("primitive element generates the multiplicative group") {
    for (const std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 31, 1024, 65536}) {
        const auto f = Field::of_order(q);
        const Elem g = f->primitive_element();
        std::uint64_t order = 1;
        Elem x = g;
        while (x != 1) {
            x = f->mul(x, g);
            ++order;
        }
        CHECK(order == q - 1);
    }
}

TEST_CASE("FieldElement rejects mixed fields") {
    const auto f4 = Field::of_order(4);
    const auto f2 = Field::of_order(2);
    const FieldElement a(f4, 2);
    const FieldElement b(f2, 1);
    CHECK_THROWS_AS(a + b, SpecError);
    CHECK((a * a).value() == 3);
    CHECK(a.inv().value() == 3);
    CHECK(enumerate(f4).size() == 4);
    CHECK_THROWS_AS(FieldElement(f2, 2), SpecError);
}

TEST_CASE("from_integer maps into the prime subfield") {
    const auto f = Field::of_order(9);
    CHECK(f->from_integer(0) == 0);
    CHECK(f->from_integer(4) == 1);
    CHECK(f->from_integer(-1) == 2);
}
