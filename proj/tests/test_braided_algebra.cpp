#include <catch2/catch_amalgamated.hpp>

#include "qva/braided_algebra.hpp"

using namespace qva;

TEST_CASE("both toy instances satisfy every braided-algebra axiom")
{
    for (auto& A : {super_instance(), twisted_group_instance()}) {
        auto failures = braided_algebra_check(A);
        INFO(A.name);
        CHECK(failures.empty());
        CHECK(braided_sn_multiplication_check(A));
    }
}

TEST_CASE("composite braiding of the far transposition is not the bare one")
{
    // on the super instance: S^{12}S^{13}S^{23} multiplies by the product of
    // all three pairwise signs, which differs from S^{13} alone on p x q x p
    BraidedAlgebra A = super_instance();
    BraidedAlgebra::Ten3 in;
    in[{1, 2, 1}] = Rat(1); // p x q x p, all odd
    auto composite = A.smap3(A.smap3(A.smap3(in, 1, 2), 0, 2), 0, 1);
    auto bare = A.smap3(in, 0, 2);
    CHECK(composite.begin()->second == Rat(-1)); // three odd pairs
    CHECK(bare.begin()->second == Rat(-1));      // one odd pair... sign -1 as well
    // distinguishing tuple: p x q x 1 (only the 12-pair is odd)
    BraidedAlgebra::Ten3 in2;
    in2[{1, 2, 0}] = Rat(1);
    auto composite2 = A.smap3(A.smap3(A.smap3(in2, 1, 2), 0, 2), 0, 1);
    auto bare2 = A.smap3(in2, 0, 2);
    CHECK(composite2.begin()->second == Rat(-1));
    CHECK(bare2.begin()->second == Rat(1));
    CHECK(composite2 != bare2);
}
