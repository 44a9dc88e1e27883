#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "azdual/cli/app.hpp"
#include "azdual/cli/io.hpp"
#include "azdual/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace azd;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int c = cli::run(args, out, err);
    return {c, out.str(), err.str()};
}

const char* kCorpus[] = {
    "m: [-3,-1]+[-2,0]+[-2,-2]+[-1,0]; phi: S3:+",
    "m: [-3,1]+[-2,0]; phi: S5:+",
    "line r ugly int; m: [-3,-1]@r+[-2,-1]@r+[-2,0]@r",
    "line r ugly int; m: [-2,-2]@r+[-1,-1]@r+[-1,-1]@r~; phi: S1@r+S1@r~",
    "line r bad int; m: [-1,-1]@r; phi: 2*S1@r",
    "m: [-2,-2]; phi: 2*S1:-+S3:+",
    "s: [-2,-2]+[0,0]:-+[-1,1]:++[2,2]",
    "line h good half; m: [-3/2,-1/2]@h; phi: S2@h:-",
    "m: 0; phi: 0",
};

}  // namespace

TEST_CASE("compact form and JSON round-trip on the corpus") {
    for (const char* t : kCorpus) {
        INFO(t);
        auto doc = cli::parse_input(t);
        auto dsl = cli::render(doc, cli::Format::dsl);
        auto json = cli::render(doc, cli::Format::json);
        CHECK(cli::render(cli::parse_input(dsl), cli::Format::dsl) == dsl);
        CHECK(cli::render(cli::parse_input(json), cli::Format::json) == json);
        CHECK(cli::render(cli::parse_input(json), cli::Format::dsl) == dsl);
    }
}

TEST_CASE("compact rendering is canonical") {
    CHECK(cli::render_dsl(azt::data("phi: S3:+; m: [-1,0] + [-3,-1]")) == "m: [-3,-1]+[-1,0]; phi: S3:+");
    CHECK(cli::render_dsl(LanglandsData{}) == "m: 0; phi: 0");
}

TEST_CASE("half-integral coefficient on an integral line is a grid error") {
    try {
        cli::parse_data("m: [-1,0] + [-3/2,-1/2]");
        FAIL("expected a parse error");
    } catch (const cli::ParseError& e) {
        CHECK(std::string(e.what()).find("grid") != std::string::npos);
        CHECK(e.where().find("column") != std::string::npos);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(cli::parse_data("m: [0,0]"), cli::ParseError);          // center not negative
    CHECK_THROWS_AS(cli::parse_data("m: [-1,0]; phi: S3"), cli::ParseError);  // missing sign
    CHECK_THROWS_AS(cli::parse_data("m: [-1,0]:+"), cli::ParseError);       // sign where none belongs
    CHECK_THROWS_AS(cli::parse_data("m: [-1,0"), cli::ParseError);
    CHECK_THROWS_AS(cli::parse_data("{\"lines\": [], \"m\": [], \"extra\": 1}"), cli::ParseError);
    CHECK_THROWS_AS(cli::parse_data("line r nice int; m: 0"), cli::ParseError);
}

TEST_CASE("the empty document") {
    auto d = cli::parse_data("");
    CHECK(d.n.empty());
    CHECK(d.phi.empty());
    CHECK(cli::render_dsl(d) == "m: 0; phi: 0");
}

TEST_CASE("JSON output is byte-stable") {
    auto d = azt::data("m: [-3,-1]+[-2,0]+[-2,-2]+[-1,0]; phi: S3:+");
    auto a = cli::render_json(d);
    CHECK(a == cli::render_json(cli::parse_data(a)));
    CHECK(cli::render_json(d, -1).find('\n') == std::string::npos);
}

TEST_CASE("run: dual") {
    auto r = call({"dual", "m: [-3,-1]+[-2,0]+[-2,-2]+[-1,0]; phi: S3:+"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "m: [-3,1]+[-2,0]; phi: S5:+\n");
    auto s = call({"dual", "s: [-2,-2]+[0,0]:-+[-1,1]:++[2,2]"});
    CHECK(s.code == cli::kOk);
    CHECK(s.out.find("[-2,2]:+") != std::string::npos);
}

TEST_CASE("run: mw") {
    auto r = call({"mw", "[-2,1]"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "[-2,-2]+[-1,-1]+[0,0]+[1,1]\n");
}

TEST_CASE("run: derive and capacity") {
    auto d = call({"derive", "--x", "-2", "s: [-2,-2]+[2,2]+[-1,1]:+"});
    CHECK(d.code == cli::kOk);
    CHECK(d.out.find("# k = 1") != std::string::npos);
    auto c = call({"capacity", "--target", "[0,0]", "[-2,1]"});
    CHECK(c.code == cli::kOk);
    CHECK(c.out.find('1') != std::string::npos);
}

TEST_CASE("run: check on a small sweep") {
    auto r = call({"check", "--max-coeff", "1", "--max-pairs", "2", "--max-centered", "2", "--suite", "involution",
                   "--threads", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("\"involution\"") != std::string::npos);
}

TEST_CASE("run: exit codes") {
    CHECK(call({}).code == cli::kUsage);
    CHECK(call({"dual", "--bogus"}).code == cli::kUsage);
    CHECK(call({"frobnicate"}).code == cli::kUsage);
    CHECK(call({"--help"}).code == cli::kOk);
    auto bad = call({"dual", "m: [0,0]"});
    CHECK(bad.code == cli::kDomain);
    CHECK(bad.err.find("error at") != std::string::npos);
    CHECK(call({"validate", "s: [-1,0]"}).code == cli::kDomain);
    CHECK(call({"validate", "s: [-1,0]+[0,1]"}).code == cli::kOk);
}

TEST_CASE("golden files under data/ dualize into each other") {
    namespace fs = std::filesystem;
    int pairs = 0;
    for (auto& entry : fs::directory_iterator(AZDUAL_DATA_DIR "/golden")) {
        std::string path = entry.path().string();
        if (path.size() < 10 || path.compare(path.size() - 10, 10, ".dual.json") == 0) continue;
        std::string dual = path.substr(0, path.size() - 5) + ".dual.json";
        REQUIRE(fs::exists(dual));
        INFO(path);
        auto a = call({"dual", path}), b = call({"dual", dual});
        CHECK(a.code == cli::kOk);
        CHECK(b.code == cli::kOk);
        std::ifstream fa(path), fb(dual);
        std::string ta((std::istreambuf_iterator<char>(fa)), {}), tb((std::istreambuf_iterator<char>(fb)), {});
        CHECK(a.out == tb);
        CHECK(b.out == ta);
        ++pairs;
    }
    CHECK(pairs == 9);
}
