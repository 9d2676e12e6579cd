#include "diffset/errors.hpp"
#include "diffset/feasibility.hpp"
#include "diffset/group.hpp"

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

using namespace diffset;

namespace {

std::set<std::string> fail_ids(const D1Ledger& led) {
    std::set<std::string> out;
    for (const auto& it : led.items)
        if (it.verdict == Verdict::fail) out.insert(it.id);
    return out;
}

std::vector<std::string> ids(const D1Ledger& led) {
    std::vector<std::string> out;
    for (const auto& it : led.items) out.push_back(it.id);
    return out;
}

std::vector<Verdict> verdicts(const D1Ledger& led) {
    std::vector<Verdict> out;
    for (const auto& it : led.items) out.push_back(it.verdict);
    return out;
}

OddPrimeParams odd(long p, long x, long s, long alpha, long eta, long gamma) {
    OddPrimeParams out;
    out.p = p;
    out.x = x;
    out.s = s;
    out.alpha = alpha;
    out.eta = eta;
    out.gamma = gamma;
    return out;
}

QuadCaseParams qc(long d, long u1, long u2, long gamma) {
    QuadCaseParams out;
    out.d = d;
    out.u1 = u1;
    out.u2 = u2;
    out.gamma = gamma;
    return out;
}

const std::vector<std::string> general_order = {
    "S2.C1a", "S2.C1b", "S2.C1c", "S2.C1d", "S2.C2", "S2.C3a", "S2.C3b", "S2.C3l",
    "S2.C4",  "S2.C5",  "S2.P3",  "S2.M1",  "S2.M2", "S2.UA",  "S2.UC",  "S2.DD"};

const std::vector<std::string> s3_order = {
    "S3.C6a", "S3.C6b", "S3.C6c", "S3.C6d", "S3.C7", "S3.C8a", "S3.C8b", "S3.C8c", "S3.C8d",
    "S3.L1",  "S3.L2",  "S3.L3",  "S3.L4",  "S3.L5", "S3.L6",  "S3.L7",  "S3.L8",  "S3.L9",
    "S3.R3",  "S3.R4"};

// Every failing verdict must survive the group refinement of the same check.
void check_monotone(const D1Ledger& base, const D1Ledger& refined) {
    for (const auto& it : base.items)
        if (it.verdict == Verdict::fail)
            CHECK(refined.item(it.id).verdict == Verdict::fail);
}

} // namespace

TEST_SUITE_BEGIN("feasibility");

TEST_CASE("odd-prime derivation reproduces the large p = 7 instance") {
    auto der = derive_odd_prime(odd(7, 1, 3, 8, 24, 4));
    REQUIRE(der.has_value());
    CHECK(der->u == 32);
    CHECK(der->sqrt_n == 224);
    CHECK(der->n == 50176);
    CHECK(der->lambda == 4480);
    CHECK(der->k == 54656);
    CHECK(der->w == 1944);
    CHECK(der->v == 666792);
    CHECK(der->delta == 504);
    CHECK(der->a == Quad::from_sqrt_pair(-7, Rat(-28), Rat(84)));
}

TEST_CASE("p = 7 instance: only the inverse-pair count fails at d1 = 0") {
    ConditionReport rep = check_odd_prime(odd(7, 1, 3, 8, 24, 4));
    CHECK(rep.kind == "odd-prime");
    CHECK(rep.p == 7);
    CHECK(rep.d == -7);
    CHECK(rep.v == 666792);
    CHECK(rep.k == 54656);
    CHECK(rep.lambda == 4480);
    CHECK(rep.sqrt_n == 224);
    CHECK(rep.w == 1944);
    CHECK(rep.s == 3);
    REQUIRE(rep.u.has_value());
    CHECK(*rep.u == 32);
    REQUIRE(rep.ledgers.size() == 2);

    const D1Ledger& l0 = rep.ledger(0);
    CHECK(fail_ids(l0) == std::set<std::string>{"S2.DD"});
    CHECK(l0.fails == 1);
    CHECK(l0.item("S2.DD").witness == "|D meet D^(-1)| = -33184");
    CHECK(l0.item("S2.UA").witness == "|U_a| = 296460");
    CHECK(l0.item("S2.UC").witness == "|U_c| = 73871");
    CHECK(l0.item("S3.R3").verdict == Verdict::pass);
    CHECK(l0.item("S3.R4").verdict == Verdict::pass);

    const D1Ledger& l1 = rep.ledger(1);
    CHECK(fail_ids(l1) == std::set<std::string>{"S2.DD", "S3.R4"});
    CHECK(l1.fails == 2);
    CHECK(l1.item("S2.UA").witness == "|U_a| = 295137");
    CHECK(l1.item("S2.UC").witness == "|U_c| = 76517");
    CHECK_FALSE(rep.feasible);

    // the mod-p quotient conditions are vacuous here
    CHECK(l0.item("S2.M1").verdict == Verdict::not_applicable);
    CHECK(l0.item("S2.M2").verdict == Verdict::not_applicable);
    CHECK(l0.item("S2.C3l").verdict == Verdict::not_applicable);
    CHECK(l0.item("S2.P3").verdict == Verdict::pass);
}

TEST_CASE("p = 11 instance: only one residue condition fails, and only at d1 = 0 does a second") {
    ConditionReport rep = check_odd_prime(odd(11, 2, 5, 30, 48, 980));
    REQUIRE(rep.u.has_value());
    CHECK(*rep.u == 81);
    CHECK(rep.sqrt_n == 9801);
    CHECK(rep.k == 364287561);
    CHECK(rep.w == 3072);
    CHECK(rep.v == 494748672);
    CHECK(rep.delta == 23232);
    CHECK(rep.a == Quad::from_sqrt_pair(-11, Rat(-1815), Rat(2904)));

    CHECK(fail_ids(rep.ledger(1)) == std::set<std::string>{"S3.R4"});
    CHECK(fail_ids(rep.ledger(0)) == std::set<std::string>{"S3.R3", "S3.R4"});
    CHECK(rep.ledger(1).item("S2.DD").witness == "|D meet D^(-1)| = 207750201");
    CHECK_FALSE(rep.feasible);
}

TEST_CASE("tiny p = 3 instance fails on seven separate counts") {
    ConditionReport rep = check_odd_prime(odd(3, 1, 2, 1, 1, 1));
    REQUIRE(rep.u.has_value());
    CHECK(*rep.u == 1);
    CHECK(rep.lambda == 6);
    CHECK(rep.k == 15);
    CHECK(rep.w == 4);
    CHECK(rep.v == 36);
    CHECK(rep.delta == 9);

    std::set<std::string> expected{"S2.C1b", "S2.P3", "S2.UA", "S2.UC",
                                   "S3.C8d", "S3.L3", "S3.L7"};
    for (long d1 = 0; d1 <= 1; ++d1) {
        const D1Ledger& led = rep.ledger(d1);
        CHECK(fail_ids(led) == expected);
        CHECK(led.fails == 7);
        CHECK(led.item("S2.DD").verdict == Verdict::pass);
    }
    CHECK(rep.ledger(0).item("S2.DD").witness == "|D meet D^(-1)| = 5");
    CHECK(rep.ledger(1).item("S2.DD").witness == "|D meet D^(-1)| = 8");
    CHECK(rep.ledger(0).item("S3.L7").witness.find("keeps the factor 4") != std::string::npos);
    CHECK_FALSE(rep.feasible);
}

TEST_CASE("catalog ids appear exactly once and in a fixed order") {
    ConditionReport op = check_odd_prime(odd(3, 1, 2, 1, 1, 1));
    std::vector<std::string> want = general_order;
    want.insert(want.end(), s3_order.begin(), s3_order.end());
    for (const auto& led : op.ledgers) CHECK(ids(led) == want);

    ConditionReport gen = check_general(Int(2), Int(16), Int(10), Int(4),
                                        Quad::from_sqrt_pair(-1, Rat(0), Rat(2)), 1);
    CHECK(ids(gen.ledger(1)) == general_order);

    ConditionReport q2 = check_quad_case(qc(-2, -96, 192, 216));
    std::vector<std::string> want2 = general_order;
    want2.push_back("S4.L1");
    want2.push_back("S4.L2");
    for (const auto& led : q2.ledgers) CHECK(ids(led) == want2);

    ConditionReport q1 = check_quad_case(qc(-1, 0, 2, 1));
    std::vector<std::string> want1 = general_order;
    want1.push_back("S5.L1");
    want1.push_back("S5.L2");
    for (const auto& led : q1.ledgers) CHECK(ids(led) == want1);

    CHECK_THROWS_AS(op.ledger(2), contract_error);
    CHECK_THROWS_AS(op.ledger(0).item("S9.X"), contract_error);
}

TEST_CASE("d = -2 instance with v = 2^12 * 81 passes everything and pins the quotient index") {
    ConditionReport rep = check_quad_case(qc(-2, -96, 192, 216));
    CHECK(rep.kind == "quad");
    CHECK(rep.p == 2);
    CHECK(rep.d == -2);
    CHECK(rep.n == 82944);
    CHECK(rep.sqrt_n == 288);
    CHECK(rep.k == 166176);
    CHECK(rep.lambda == 83232);
    CHECK(rep.v == 331776);
    CHECK(rep.s == 12);
    CHECK(rep.w == 81);
    for (const auto& led : rep.ledgers) CHECK(led.fails == 0);
    CHECK(rep.feasible);
    REQUIRE(rep.min_l.has_value());
    REQUIRE(rep.max_l.has_value());
    CHECK(*rep.min_l == 1024);
    CHECK(*rep.max_l == 1024);
    REQUIRE(rep.notes.size() == 1);
    CHECK(rep.notes[0].find("2^10") != std::string::npos);
    CHECK(rep.notes[0].find("1024") != std::string::npos);
    CHECK(rep.notes[0].find("cyclic Sylow 2-subgroup") != std::string::npos);
    CHECK(rep.notes[0].find("Turyn") != std::string::npos);
}

TEST_CASE("d = -2 instance with v = 2^14 * 729 behaves the same one scale up") {
    ConditionReport rep = check_quad_case(qc(-2, -1344, 768, 972));
    CHECK(rep.sqrt_n == 1728);
    CHECK(rep.k == 5973696);
    CHECK(rep.v == 11943936);
    CHECK(rep.s == 14);
    CHECK(rep.w == 729);
    CHECK(rep.feasible);
    for (const auto& led : rep.ledgers) CHECK(led.fails == 0);
    REQUIRE(rep.min_l.has_value());
    REQUIRE(rep.max_l.has_value());
    CHECK(*rep.min_l == 4096);
    CHECK(*rep.max_l == 4096);
    REQUIRE(rep.notes.size() == 1);
    CHECK(rep.notes[0].find("2^12") != std::string::npos);
}

TEST_CASE("d = -1 instance with v = 2^12 * 625 passes but gets no exclusion note") {
    ConditionReport rep = check_quad_case(qc(-1, -480, 640, 500));
    CHECK(rep.d == -1);
    CHECK(rep.sqrt_n == 800);
    CHECK(rep.k == 1280800);
    CHECK(rep.v == 2560000);
    CHECK(rep.s == 12);
    CHECK(rep.w == 625);
    CHECK(rep.feasible);
    for (const auto& led : rep.ledgers) CHECK(led.fails == 0);
    REQUIRE(rep.min_l.has_value());
    REQUIRE(rep.max_l.has_value());
    CHECK(*rep.min_l == 2048);
    CHECK(*rep.max_l == 2048);
    CHECK(rep.notes.empty());
}

TEST_CASE("general catalog on (16, 10) with value 2i") {
    Quad a = Quad::from_sqrt_pair(-1, Rat(0), Rat(2));
    ConditionReport rep = check_general(Int(2), Int(16), Int(10), Int(4), a, 1);
    CHECK(rep.kind == "general");
    REQUIRE(rep.ledgers.size() == 1);
    const D1Ledger& led = rep.ledger(1);
    CHECK(led.fails == 0);
    CHECK(rep.feasible);
    CHECK(led.item("S2.DD").witness == "|D meet D^(-1)| = 4");
    CHECK(led.item("S2.P3").verdict == Verdict::not_applicable);
    CHECK(led.item("S2.M1").verdict == Verdict::not_applicable);
    CHECK(led.item("S2.M2").verdict == Verdict::not_applicable);
    CHECK(led.item("S2.C3l").verdict == Verdict::pass);

    ConditionReport rep0 = check_general(Int(2), Int(16), Int(10), Int(4), a, 0);
    CHECK(fail_ids(rep0.ledger(0)) == std::set<std::string>{"S2.C5", "S2.UC"});
    CHECK_FALSE(rep0.feasible);

    ConditionReport small = check_general(Int(2), Int(4), Int(3), Int(1),
                                          Quad::from_sqrt_pair(-1, Rat(0), Rat(1)), 1);
    CHECK(small.ledger(1).fails == 0);
    CHECK(small.feasible);
}

TEST_CASE("quad parameters (0, 2, 1) reproduce the (16, 6, 2) profile") {
    ConditionReport rep = check_quad_case(qc(-1, 0, 2, 1));
    CHECK(rep.v == 16);
    CHECK(rep.k == 6);
    CHECK(rep.lambda == 2);
    CHECK(rep.n == 4);
    CHECK(rep.s == 4);
    CHECK(rep.w == 1);
    CHECK(rep.ledger(1).fails == 0);
    CHECK(rep.feasible);
    CHECK(fail_ids(rep.ledger(0)) == std::set<std::string>{"S2.C5", "S2.UC", "S2.DD"});
    REQUIRE(rep.min_l.has_value());
    REQUIRE(rep.max_l.has_value());
    CHECK(*rep.min_l == 4);
    CHECK(*rep.max_l == 8);
    CHECK(rep.notes.empty());

    ConditionReport tiny = check_quad_case(qc(-1, 0, 1, 1));
    CHECK(tiny.v == 4);
    CHECK(tiny.k == 3);
    CHECK(tiny.ledger(1).fails == 0);
    CHECK(tiny.feasible);
}

TEST_CASE("group structure tightens the 2-rank condition") {
    Quad a = Quad::from_sqrt_pair(-1, Rat(0), Rat(2));
    ConditionReport base = check_general(Int(2), Int(16), Int(10), Int(4), a, 1);

    AbelianGroup g44 = make_group({4, 4});
    ConditionReport r44 = check_general(Int(2), Int(16), Int(10), Int(4), a, 1, &g44);
    CHECK(r44.ledger(1).fails == 0);
    CHECK(r44.feasible);

    AbelianGroup g2222 = make_group({2, 2, 2, 2});
    ConditionReport r2222 = check_general(Int(2), Int(16), Int(10), Int(4), a, 1, &g2222);
    CHECK(r2222.ledger(1).item("S2.C3l").verdict == Verdict::fail);
    CHECK_FALSE(r2222.feasible);

    AbelianGroup g422 = make_group({4, 2, 2});
    ConditionReport r422 = check_general(Int(2), Int(16), Int(10), Int(4), a, 1, &g422);
    CHECK(r422.ledger(1).item("S2.C3l").verdict == Verdict::fail);

    for (const std::vector<long>& factors :
         {std::vector<long>{16}, {8, 2}, {4, 4}, {4, 2, 2}, {2, 2, 2, 2}}) {
        AbelianGroup g = make_group(factors);
        ConditionReport refined = check_general(Int(2), Int(16), Int(10), Int(4), a, 1, &g);
        CHECK(ids(refined.ledger(1)) == ids(base.ledger(1)));
        check_monotone(base.ledger(1), refined.ledger(1));
    }
}

TEST_CASE("group structure picks the exact quotient index in the quad case") {
    QuadCaseParams p = qc(-1, 0, 2, 1);

    AbelianGroup g44 = make_group({4, 4});
    ConditionReport r44 = check_quad_case(p, &g44);
    CHECK(r44.ledger(1).item("S5.L1").verdict == Verdict::pass);
    CHECK(r44.ledger(1).item("S5.L1").witness.find("l = 4") != std::string::npos);
    CHECK(r44.ledger(1).item("S5.L2").verdict == Verdict::pass);
    CHECK(r44.feasible);

    AbelianGroup g16 = make_group({16});
    ConditionReport r16 = check_quad_case(p, &g16);
    CHECK(r16.ledger(1).item("S5.L1").witness.find("l = 8") != std::string::npos);
    CHECK(r16.feasible);

    AbelianGroup g2222 = make_group({2, 2, 2, 2});
    ConditionReport r2222 = check_quad_case(p, &g2222);
    CHECK(r2222.ledger(1).item("S5.L1").verdict == Verdict::fail);
    CHECK_FALSE(r2222.feasible);

    ConditionReport base = check_quad_case(p);
    for (const std::vector<long>& factors :
         {std::vector<long>{16}, {8, 2}, {4, 4}, {4, 2, 2}, {2, 2, 2, 2}}) {
        AbelianGroup g = make_group(factors);
        ConditionReport refined = check_quad_case(p, &g);
        check_monotone(base.ledger(0), refined.ledger(0));
        check_monotone(base.ledger(1), refined.ledger(1));
        CHECK(refined.notes.empty());
    }
}

TEST_CASE("group-aware d = -2 quotient check distinguishes the 2-part exponent") {
    // v = 56 = 2^3 * 7 from (u1, u2, gamma) = (-1, 2, 1)
    ConditionReport base = check_quad_case(qc(-2, -1, 2, 1));
    CHECK(base.v == 56);
    CHECK(base.k == 11);
    CHECK_FALSE(base.feasible);
    CHECK(base.ledger(1).item("S4.L2").verdict == Verdict::fail);

    AbelianGroup g56 = make_group({56}); // 2-part Z8, exponent 8
    ConditionReport r56 = check_quad_case(qc(-2, -1, 2, 1), &g56);
    CHECK(r56.ledger(1).item("S4.L1").verdict == Verdict::pass);
    CHECK(r56.ledger(1).item("S4.L1").witness.find("l = 2") != std::string::npos);
    CHECK(r56.ledger(1).item("S4.L2").verdict == Verdict::fail);
    CHECK(r56.notes.empty());

    AbelianGroup g247 = make_group({2, 4, 7}); // 2-part exponent 4: the value is unreachable
    ConditionReport r247 = check_quad_case(qc(-2, -1, 2, 1), &g247);
    CHECK(r247.ledger(1).item("S4.L1").verdict == Verdict::fail);

    AbelianGroup g2227 = make_group({2, 2, 2, 7}); // 2-part exponent 2
    ConditionReport r2227 = check_quad_case(qc(-2, -1, 2, 1), &g2227);
    CHECK(r2227.ledger(1).item("S4.L1").verdict == Verdict::fail);
}

TEST_CASE("verdicts are invariant under conjugating the value") {
    auto compare = [](const ConditionReport& x, const ConditionReport& y) {
        REQUIRE(x.ledgers.size() == y.ledgers.size());
        for (size_t i = 0; i < x.ledgers.size(); ++i) {
            CHECK(ids(x.ledgers[i]) == ids(y.ledgers[i]));
            CHECK(verdicts(x.ledgers[i]) == verdicts(y.ledgers[i]));
        }
    };

    Quad a31 = Quad::from_sqrt_pair(-7, Rat(-28), Rat(84));
    for (long d1 = 0; d1 <= 1; ++d1)
        compare(check_general(Int(7), Int(666792), Int(54656), Int(50176), a31, d1),
                check_general(Int(7), Int(666792), Int(54656), Int(50176), a31.conj(), d1));

    Quad a2i = Quad::from_sqrt_pair(-1, Rat(0), Rat(2));
    compare(check_general(Int(2), Int(16), Int(10), Int(4), a2i, 1),
            check_general(Int(2), Int(16), Int(10), Int(4), a2i.conj(), 1));
}

TEST_CASE("the general catalog agrees with the odd-prime report on shared items") {
    ConditionReport full = check_odd_prime(odd(7, 1, 3, 8, 24, 4));
    Quad a = Quad::from_sqrt_pair(-7, Rat(-28), Rat(84));
    for (long d1 = 0; d1 <= 1; ++d1) {
        ConditionReport gen = check_general(Int(7), Int(666792), Int(54656), Int(50176), a, d1);
        const D1Ledger& lg = gen.ledger(d1);
        const D1Ledger& lf = full.ledger(d1);
        for (const auto& it : lg.items) CHECK(it.verdict == lf.item(it.id).verdict);
    }
}

TEST_CASE("odd-prime parameter domain violations are rejected") {
    CHECK_THROWS_AS(check_odd_prime(odd(5, 1, 2, 1, 1, 1)), malformed_error);  // p = 1 mod 4
    CHECK_THROWS_AS(check_odd_prime(odd(4, 1, 2, 1, 1, 1)), malformed_error);  // p composite
    CHECK_THROWS_AS(check_odd_prime(odd(7, 0, 2, 8, 24, 4)), malformed_error); // x too small
    CHECK_THROWS_AS(check_odd_prime(odd(7, 1, 1, 8, 24, 4)), malformed_error); // s = x
    CHECK_THROWS_AS(check_odd_prime(odd(7, 1, 3, 0, 24, 4)), malformed_error); // alpha = 0
    CHECK_THROWS_AS(check_odd_prime(odd(7, 1, 3, 8, 0, 4)), malformed_error);  // eta = 0
    CHECK_THROWS_AS(check_odd_prime(odd(7, 1, 3, 8, 24, 49)), malformed_error); // gamma = p^(s-x)

    std::string why;
    CHECK_FALSE(derive_odd_prime(odd(7, 1, 3, 1, 1, 1), &why).has_value());
    CHECK(why.find("no integer solution") != std::string::npos);
    CHECK_FALSE(derive_odd_prime(odd(7, 1, 3, 8, 24, 5), &why).has_value());
    CHECK(why.find("lambda") != std::string::npos);
    CHECK_FALSE(derive_odd_prime(odd(7, 1, 2, 8, 24, 3), &why).has_value());
    CHECK(why.find("w is not an integer") != std::string::npos);
}

TEST_CASE("quad parameter domain violations are rejected") {
    CHECK_THROWS_AS(check_quad_case(qc(-3, 0, 2, 1)), malformed_error); // d out of range
    CHECK_THROWS_AS(check_quad_case(qc(-1, 0, 0, 1)), malformed_error); // u2 = 0
    CHECK_THROWS_AS(check_quad_case(qc(-1, 1, 2, 1)), malformed_error); // u1 positive
    CHECK_THROWS_AS(check_quad_case(qc(-1, 0, 2, 0)), malformed_error); // gamma = 0

    std::string why;
    CHECK_FALSE(derive_quad_case(qc(-1, -1, 1, 1), &why).has_value());
    CHECK(why.find("not a perfect square") != std::string::npos);
    CHECK_FALSE(derive_quad_case(qc(-1, -3, 4, 1), &why).has_value());
    CHECK(why.find("lambda") != std::string::npos);
    CHECK_FALSE(derive_quad_case(qc(-1, -3, 4, 3), &why).has_value());
    CHECK(why.find("not an integer") != std::string::npos);
}

TEST_CASE("general checker rejects inconsistent inputs") {
    Quad a2i = Quad::from_sqrt_pair(-1, Rat(0), Rat(2));
    CHECK_THROWS_AS(check_general(Int(6), Int(16), Int(10), Int(4), a2i, 1), malformed_error);
    CHECK_THROWS_AS(check_general(Int(3), Int(16), Int(10), Int(4), a2i, 1), malformed_error);
    Quad a7 = Quad::from_sqrt_pair(-7, Rat(-28), Rat(84));
    CHECK_THROWS_AS(check_general(Int(2), Int(666792), Int(54656), Int(50176), a7, 1),
                    malformed_error);
    // counting identity broken
    CHECK_THROWS_AS(check_general(Int(2), Int(16), Int(9), Int(4), a2i, 1), malformed_error);
    // d1 outside {0, 1}
    CHECK_THROWS_AS(check_general(Int(2), Int(16), Int(10), Int(4), a2i, 2), malformed_error);
    // group of the wrong order
    AbelianGroup g8 = make_group({8});
    CHECK_THROWS_AS(check_general(Int(2), Int(16), Int(10), Int(4), a2i, 1, &g8),
                    malformed_error);
    CHECK_THROWS_AS(check_quad_case(qc(-1, 0, 2, 1), &g8), malformed_error);
}

TEST_CASE("special family: (16, 10, 2i) is recognized with its full structure") {
    Quad a = Quad::from_sqrt_pair(-1, Rat(0), Rat(2));
    SpecialCaseReport rep = check_special_hadamard(Int(16), Int(10), a);
    CHECK(rep.applicable);
    CHECK(rep.trace_zero);
    CHECK(rep.p_group);
    CHECK(rep.m_subgroup_forced);
    CHECK(rep.plus_type);
    CHECK_FALSE(rep.minus_type);
    CHECK(rep.feasible);
    CHECK(rep.d1 == 1);
    CHECK(rep.m == 2);
    CHECK(rep.h_order == 4);
    CHECK(rep.m_order == 4);
    CHECK(rep.reason.empty());
    CHECK(rep.deductions.size() == 6);

    SpecialCaseReport conj = check_special_hadamard(Int(16), Int(10), a.conj());
    CHECK(conj.feasible);
    CHECK(conj.m == 2);
}

TEST_CASE("special family: plus-type members at other sizes") {
    SpecialCaseReport small = check_special_hadamard(Int(4), Int(3),
                                                     Quad::from_sqrt_pair(-1, Rat(0), Rat(1)));
    CHECK(small.feasible);
    CHECK(small.m == 1);
    CHECK(small.h_order == 2);

    SpecialCaseReport big = check_special_hadamard(Int(64), Int(36),
                                                   Quad::from_sqrt_pair(-1, Rat(0), Rat(4)));
    CHECK(big.feasible);
    CHECK(big.m == 3);
    CHECK(big.h_order == 8);
}

TEST_CASE("special family: minus-type parameters are always excluded") {
    SpecialCaseReport m4 = check_special_hadamard(Int(16), Int(6),
                                                  Quad::from_sqrt_pair(-1, Rat(0), Rat(2)));
    CHECK(m4.applicable);
    CHECK(m4.minus_type);
    CHECK_FALSE(m4.feasible);
    CHECK(m4.reason.find("order 16") != std::string::npos);

    SpecialCaseReport m1 = check_special_hadamard(Int(4), Int(1),
                                                  Quad::from_sqrt_pair(-1, Rat(0), Rat(1)));
    CHECK(m1.minus_type);
    CHECK_FALSE(m1.feasible);
    CHECK(m1.reason.find("single element") != std::string::npos);

    SpecialCaseReport m9 = check_special_hadamard(Int(36), Int(15),
                                                  Quad::from_sqrt_pair(-1, Rat(0), Rat(3)));
    CHECK(m9.minus_type);
    CHECK_FALSE(m9.feasible);
    CHECK(m9.reason.find("sqrt(n) <= 2") != std::string::npos);
}

TEST_CASE("special family: structural obstructions outside the family") {
    // trace zero but v != 4n
    SpecialCaseReport men = check_special_hadamard(Int(96), Int(20),
                                                   Quad::from_sqrt_pair(-1, Rat(0), Rat(4)));
    CHECK(men.applicable);
    CHECK(men.trace_zero);
    CHECK_FALSE(men.p_group);
    CHECK_FALSE(men.m_subgroup_forced);
    CHECK_FALSE(men.feasible);
    CHECK(men.reason.find("v != 4n") != std::string::npos);

    SpecialCaseReport men2 = check_special_hadamard(Int(8), Int(7),
                                                    Quad::from_sqrt_pair(-1, Rat(0), Rat(1)));
    CHECK(men2.trace_zero);
    CHECK_FALSE(men2.feasible);

    // plus-type shape but v has an odd part
    SpecialCaseReport odd_part = check_special_hadamard(Int(36), Int(21),
                                                        Quad::from_sqrt_pair(-1, Rat(0), Rat(3)));
    CHECK(odd_part.plus_type);
    CHECK_FALSE(odd_part.feasible);
    CHECK(odd_part.reason.find("odd part") != std::string::npos);

    // odd p-group
    SpecialCaseReport p9 = check_special_hadamard(Int(9), Int(8),
                                                  Quad::from_sqrt_pair(-3, Rat(1, 2), Rat(1, 2)));
    CHECK(p9.applicable);
    CHECK(p9.p_group);
    CHECK_FALSE(p9.feasible);
    CHECK(p9.reason.find("w = 1") != std::string::npos);

    // 2-group whose value field needs characters of odd order
    SpecialCaseReport f3 = check_special_hadamard(Int(16), Int(6),
                                                  Quad::from_sqrt_pair(-3, Rat(1), Rat(1)));
    CHECK(f3.applicable);
    CHECK_FALSE(f3.trace_zero);
    CHECK_FALSE(f3.feasible);
    CHECK(f3.reason.find("2-power cyclotomic") != std::string::npos);

    // forced subgroup side with trace outside {0, -2}
    SpecialCaseReport c1 = check_special_hadamard(Int(144), Int(78),
                                                  Quad::from_sqrt_pair(-35, Rat(1), Rat(1)));
    CHECK(c1.applicable);
    CHECK(c1.m_subgroup_forced);
    CHECK_FALSE(c1.p_group);
    CHECK_FALSE(c1.feasible);
    CHECK(c1.reason.find("{0, -2}") != std::string::npos);

    SpecialCaseReport c2 = check_special_hadamard(Int(144), Int(78),
                                                  Quad::from_sqrt_pair(-35, Rat(-1), Rat(1)));
    CHECK_FALSE(c2.feasible);
    CHECK(c2.reason.find("(sqrt(n) + 1) | n") != std::string::npos);
}

TEST_CASE("special family: hypotheses absent or inputs malformed") {
    SpecialCaseReport na = check_special_hadamard(Int(36), Int(15),
                                                  Quad::from_sqrt_pair(-5, Rat(2), Rat(1)));
    CHECK_FALSE(na.applicable);
    CHECK_FALSE(na.feasible);
    CHECK(na.d1 == -1);
    CHECK(na.reason.find("no structural hypothesis") != std::string::npos);

    CHECK_THROWS_AS(check_special_hadamard(Int(16), Int(10),
                                           Quad::from_sqrt_pair(-1, Rat(1), Rat(2))),
                    malformed_error); // norm 5 != n
    CHECK_THROWS_AS(check_special_hadamard(Int(15), Int(10),
                                           Quad::from_sqrt_pair(-1, Rat(0), Rat(2))),
                    malformed_error); // lambda not an integer
    CHECK_THROWS_AS(check_special_hadamard(Int(16), Int(10), Quad(-1, Int(2), Int(0))),
                    malformed_error); // rational value
}

TEST_SUITE_END();
