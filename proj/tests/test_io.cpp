#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "cyclic/io.hpp"

using namespace cyclic;
using namespace cyclic::io;

TEST_CASE("doubles round-trip through text")
{
    for (double x : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.27590958028415894}) {
        CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(std::isnan(parse_double(format_double(std::numeric_limits<double>::quiet_NaN()))));
    CHECK(parse_double(format_double(-std::numeric_limits<double>::infinity())) ==
          -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(parse_double("1.5x"), IoError);
    CHECK_THROWS_AS(parse_double(""), IoError);
}

TEST_CASE("sample table round-trip")
{
    const auto set = sim::simulate_ensemble(ModelParams{1.0, 2.0, 3}, 1.0, 500, 12);
    const Metadata meta{{"dim", "3"}, {"seed", "12"}};
    std::stringstream ss;
    write_samples(ss, set, meta);
    CHECK(ss.str().rfind("# dim=3\n# seed=12\n", 0) == 0);
    CHECK(ss.str().find("replication,n_events,u,stratum,x1,x2,x3,final_direction") != std::string::npos);

    const auto table = read_samples(ss);
    CHECK(table.dim == 3);
    CHECK(table.meta == meta);
    REQUIRE(table.rows.size() == set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& o = set.outcomes[i];
        const auto& r = table.rows[i];
        CHECK(r.replication == i);
        CHECK(r.n_events == o.n_events);
        CHECK(r.u == o.u);
        CHECK(r.stratum == o.stratum);
        CHECK(r.final_direction == o.final_direction.index);
        for (int k = 0; k < 3; ++k) {
            CHECK(r.x[static_cast<std::size_t>(k)] == o.position[static_cast<std::size_t>(k)]);
        }
    }
}

TEST_CASE("malformed sample files")
{
    for (const char* text : {"",
                             "# k=v\n",
                             "# novalue\nreplication,n_events,u,stratum,x1,final_direction\n",
                             "replication,u\n0,1\n",
                             "replication,n_events,u,stratum,x1,final_direction\n0,1,0.5,interior\n",
                             "replication,n_events,u,stratum,x1,final_direction\n0,1,abc,interior,0.5,1\n",
                             "replication,n_events,u,stratum,x1,final_direction\n0,1,0.5,edge,0.5,1\n"}) {
        std::istringstream is(text);
        CAPTURE(text);
        CHECK_THROWS_AS(read_samples(is), IoError);
    }
}

TEST_CASE("numeric table round-trip")
{
    Table t;
    t.meta = {{"lambda", "1"}};
    t.columns = {"u", "p_unconditional", "p_cond_n3"};
    t.rows = {{0.0, 0.25, 0.5}, {0.5, std::numeric_limits<double>::quiet_NaN(), 1.0 / 3.0}};
    std::stringstream ss;
    write_table(ss, t);
    const auto back = read_table(ss);
    CHECK(back.meta == t.meta);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0] == t.rows[0]);
    CHECK(std::isnan(back.rows[1][1]));
    CHECK(back.rows[1][2] == 1.0 / 3.0);
    CHECK(meta_value(back.meta, "lambda") == "1");
    CHECK_THROWS_AS(meta_value(back.meta, "seed"), IoError);

    std::istringstream bad("a,b\n1,2,3\n");
    CHECK_THROWS_AS(read_table(bad), IoError);
}

TEST_CASE("JSON report round-trip")
{
    std::vector<stats::TestReport> reports(2);
    reports[0] = {"ks_n3", 0.0123, 0.45, 0.01, true, 1000};
    reports[1] = {"order", std::numeric_limits<double>::quiet_NaN(), 0.0, 0.3, false, 0};
    std::stringstream ss;
    write_report(ss, reports);
    CHECK(ss.str().find("null") != std::string::npos);
    const auto back = read_report(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "ks_n3");
    CHECK(back[0].statistic == 0.0123);
    CHECK(back[0].p_value == 0.45);
    CHECK(back[0].pass);
    CHECK(std::isnan(back[1].statistic));
    CHECK_FALSE(back[1].pass);

    std::istringstream obj("{\"name\": 1}");
    CHECK_THROWS_AS(read_report(obj), IoError);
    std::istringstream junk("[{");
    CHECK_THROWS_AS(read_report(junk), IoError);
}

TEST_CASE("unwritable paths")
{
    CHECK_THROWS_AS(write_file("/nonexistent-dir/out.csv", [](std::ostream& os) { os << "x"; }), IoError);
    CHECK_FALSE(build_id().empty());
}
