#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "juggling/io.hpp"
#include "juggling/model.hpp"

using namespace juggling;

namespace {

Rational R(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST(Json, KernelRoundTrip)
{
    const auto k = build_enriched(4, 2, std::vector<Rational>{R(1, 3), R(2, 3)});
    const auto j = kernel_to_json(k);
    EXPECT_EQ(j.at("states").size(), 7u);
    EXPECT_EQ(kernel_from_json(Json::parse(j.dump())), k);
}

TEST(Json, DistributionRoundTrip)
{
    const auto d = stationary_mjmc(4, 2, std::vector<Rational>{R(1, 2), R(1, 4), R(1, 4)});
    const auto j = distribution_to_json(d);
    EXPECT_EQ(j.at("exact").at(0).get<std::string>(), to_string(d.weights[0]));
    EXPECT_NEAR(j.at("float").at(0).get<double>(), d.weights[0].get_d(), 1e-15);
    EXPECT_TRUE(j.at("normalized").get<bool>());
    EXPECT_EQ(distribution_from_json(Json::parse(j.dump())), d);
}

TEST(Json, RejectsMalformed)
{
    EXPECT_THROW(distribution_from_json(Json{{"states", {"a", "b"}}, {"exact", {"1/2"}}}), DomainError);
    EXPECT_THROW(kernel_from_json(Json{{"states", {"a"}}, {"rows", {{{3, "1"}}}}}), DomainError);
    EXPECT_THROW(kernel_from_json(Json{{"states", {"a", "b"}}, {"rows", {{{0, "1"}}}}}), DomainError);
    EXPECT_THROW(tail_params_from_json(Json{{"family", "zeta"}}), DomainError);
}

TEST(Json, TailParams)
{
    const auto g = tail_params_from_json(Json{{"family", "geometric"}, {"q", "1/3"}});
    EXPECT_TRUE(g.is_geometric());
    EXPECT_EQ(g.q(), R(1, 3));
    const auto f = tail_params_from_json(Json{{"family", "finite"}, {"xs", {"1/2", "1/2"}}});
    EXPECT_EQ(f.y(1), R(1, 2));
}

TEST(Csv, QuotesSetPartitionLabels)
{
    const auto d = stationary_enriched(3, 2, std::vector<Rational>{R(1, 2), R(1, 2)});
    const auto csv = distribution_to_csv(d);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "state,exact,float");
    EXPECT_NE(csv.find("\"1,2|3\","), std::string::npos);
    EmpiricalDistribution e{{"bo", "ob"}, {3, 1}, 4};
    EXPECT_EQ(empirical_to_csv(e), "state,count,frequency\nbo,3,0.75\nob,1,0.25\n");
}

TEST(Scalar, ParseAndPrint)
{
    EXPECT_EQ(parse_rational("6/8"), R(3, 4));
    EXPECT_EQ(parse_rational("-2"), R(-2));
    EXPECT_EQ(to_string(R(3, 4)), "3/4");
    EXPECT_EQ(to_string(R(5)), "5");
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("abc"), DomainError);
}

TEST(Model, SpecsResolveToKernels)
{
    ChainSpec s;
    s.model = Model::Mjmc;
    s.h = 4;
    s.k = 2;
    s.xs = {R(1, 2), R(1, 4), R(1, 4)};
    EXPECT_EQ(state_labels(s), build_kernel(s).labels());
    EXPECT_EQ(closed_form_stationary(s), stationary_mjmc(4, 2, s.xs));

    s.model = Model::DoublyEnriched;
    s.h = 2;
    s.letters = {R(1, 3), R(1, 3), R(1, 3)};
    EXPECT_EQ(state_labels(s).size(), 9u);
    EXPECT_EQ(default_burn_in(s), 2);

    s.model = Model::Imjmc;
    EXPECT_THROW(build_kernel(s), DomainError);
    EXPECT_EQ(parse_model("enriched-adddrop"), Model::EnrichedAddDrop);
    EXPECT_THROW(parse_model("nope"), DomainError);
}
