#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "rumor/svg_plot.hpp"
#include "rumor/table.hpp"

using namespace rumor;

TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5})
        CHECK(parse_double(format_double(v)) == v);
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("strict parsers") {
    CHECK(parse_int(" -12 ") == -12);
    CHECK(parse_uint("42") == 42u);
    CHECK_THROWS(parse_double("1.5x"));
    CHECK_THROWS(parse_uint("-1"));
    CHECK_THROWS(parse_int(""));
}

TEST_CASE("split and trim") {
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(trim("  x y \t") == "x y");
}

TEST_CASE("csv round trip keeps comments") {
    Table t;
    t.comments = {"seed=3", "name=x"};
    t.columns = {"a", "b"};
    t.rows = {{"1", "2.5"}, {"3", "nan"}};
    std::stringstream s;
    write_csv(s, t);
    CHECK(s.str().rfind("# seed=3\n# name=x\na,b\n", 0) == 0);
    auto back = read_csv(s);
    CHECK(back.comments == t.comments);
    CHECK(back.rows == t.rows);
    CHECK(back.numeric("b")[0] == 2.5);
    CHECK(std::isnan(back.numeric("b")[1]));
    CHECK_THROWS_AS(back.column("c"), std::out_of_range);
}

TEST_CASE("svg is self-contained and deterministic") {
    const std::vector<PlotSeries> series{{"R", {0, 1, 2}, {0, 0.5, 0.7}},
                                         {"S & co", {0, 1, 2}, {0.1, std::numeric_limits<double>::quiet_NaN(), 0}}};
    const PlotSpec spec{"Title <x>", "t", "fraction", false, true};
    const auto a = render_svg(spec, series);
    CHECK(a == render_svg(spec, series));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("href") == std::string::npos);
    CHECK(a.find("S &amp; co") != std::string::npos);
    CHECK(a.find("Title &lt;x&gt;") != std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
}

TEST_CASE("svg handles degenerate input") {
    CHECK_NOTHROW(render_svg({"empty", "x", "y"}, {}));
    CHECK_NOTHROW(render_svg({"flat", "x", "y"}, {{"c", {1, 1}, {2, 2}}}));
    const auto log = render_svg({"log", "N", "y", true}, {{"c", {100, 1000, 100000}, {1, 2, 3}}});
    CHECK(log.find("1e+05") != std::string::npos);
}
