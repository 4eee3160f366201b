#include <catch2/catch_amalgamated.hpp>

#include "qva/verify.hpp"

using namespace qva;

TEST_CASE("axiom catalogue passes on small tuple sweeps")
{
    TruncationSpec spec{3, 4, 5};
    VertexAlgebra V(jing_bicharacter(3), spec);
    AxiomSuite suite(V, 3);
    for (auto& name : AxiomSuite::catalogue()) {
        AxiomReport r = suite.run(name);
        INFO(r.axiom << " tuples " << r.tuples << " witness " << r.witness);
        CHECK(r.pass);
        CHECK(r.tuples > 0);
    }
    CHECK_THROWS_AS(suite.run("no_such_axiom"), UnknownAxiom);
}

TEST_CASE("failure reports reproduce deterministically")
{
    // sabotaged algebra: the lattice pairing truncated at order 0 compared
    // against the deformed one must break braided symmetry reports only in
    // a fabricated comparison; here we check report determinism instead
    TruncationSpec spec{2, 3, 4};
    VertexAlgebra V(jing_bicharacter(2), spec);
    AxiomSuite suite(V, 2);
    AxiomReport a = suite.run("braided_symmetry");
    AxiomReport b = suite.run("braided_symmetry");
    CHECK(a.pass == b.pass);
    CHECK(a.tuples == b.tuples);
    CHECK(a.witness == b.witness);
}
