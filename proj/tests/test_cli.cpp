#include "persym/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using persym::cli::run;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json without_timing(json j) {
    j.erase("elapsed_ms");
    return j;
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("persym_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool all_checks_ok(const json& report) {
    for (const auto& c : report.at("checks")) {
        if (!c.at("ok").get<bool>()) {
            return false;
        }
    }
    return !report.at("checks").empty();
}

}  // namespace

TEST_CASE("rqnk examples") {
    const auto r = invoke({"rqnk", "--q", "3", "--n", "1", "--k", "9", "--method", "kernel"});
    CHECK(r.code == 0);
    CHECK(r.report().at("value") == "145227776");
    CHECK(invoke({"rqnk", "--q", "3", "--n", "1", "--k", "9", "--method", "formula"}).report().at("value") == "145227776");
    CHECK(invoke({"rqnk", "--q", "1", "--n", "1", "--k", "1", "--method", "naive"}).report().at("value") == "5");
    const auto closed = invoke({"rqnk", "--q", "3", "--n", "3", "--k", "9", "--method", "formula", "--dist", "closed"});
    CHECK(closed.code == 0);
    CHECK(closed.report().at("value") == "307835648");
}

TEST_CASE("verify on a small census passes every check") {
    const auto r = invoke({"verify", "--n", "1", "--k", "2"});
    CHECK(r.code == 0);
    const auto rep = r.report();
    CHECK(rep.at("gamma") == json::array({"1", "3", "4"}));
    CHECK(all_checks_ok(rep));
    bool saw_identity = false;
    for (const auto& c : rep.at("checks")) {
        saw_identity |= c.at("anchor") == "first-moment";
    }
    CHECK(saw_identity);
}

TEST_CASE("formula reports value and provenance") {
    const auto r = invoke({"formula", "--i", "6", "--n", "2", "--k", "9"});
    CHECK(r.code == 0);
    const auto rep = r.report();
    CHECK(rep.at("value") == "0");
    CHECK(rep.at("valid_from_k") == 7);
    CHECK(rep.at("polynomial").at("coefficients").at("6") == "127");
}

TEST_CASE("exit codes") {
    SUBCASE("no closed form") {
        const auto r = invoke({"formula", "--i", "7", "--n", "2", "--k", "12"});
        CHECK(r.code == 4);
        CHECK(r.report().at("error") == "no_closed_form");
    }
    SUBCASE("budget refusal reports the cost") {
        const auto r = invoke({"census", "--n", "4", "--k", "9"});
        CHECK(r.code == 3);
        CHECK(r.report().at("cost").at("assignments") == "1099511627776");
        CHECK(invoke({"rqnk", "--q", "3", "--n", "2", "--k", "9", "--method", "naive"}).code == 3);
        CHECK(invoke({"census", "--n", "2", "--k", "4", "--budget", "100"}).code == 3);
    }
    SUBCASE("usage errors") {
        CHECK(invoke({}).code == 2);
        CHECK(invoke({"bogus"}).code == 2);
        CHECK(invoke({"census", "--n", "1"}).code == 2);
        CHECK(invoke({"census", "--n", "1", "--k", "0"}).code == 2);
        CHECK(invoke({"rqnk", "--q", "1", "--n", "1", "--k", "1", "--method", "guess"}).code == 2);
        CHECK(invoke({"census", "--n", "1", "--k", "2", "--shards", "2", "--shard-index", "2"}).code == 2);
    }
    SUBCASE("help") {
        CHECK(invoke({"--help"}).code == 0);
    }
}

TEST_CASE("census report round-trips through verify") {
    TempDir dir;
    const auto path = dir.file("census.json");
    const auto c = invoke({"census", "--n", "2", "--k", "5", "--out", path});
    REQUIRE(c.code == 0);
    const json saved = json::parse(slurp(path));
    CHECK(without_timing(saved) == without_timing(c.report()));

    const auto dist = persym::cli::distribution_from_report(saved);
    CHECK(dist == persym::census(2, 5));

    const auto from_file = invoke({"verify", "--input", path});
    const auto direct = invoke({"verify", "--n", "2", "--k", "5"});
    CHECK(from_file.code == 0);
    CHECK(from_file.report().at("checks") == direct.report().at("checks"));
}

TEST_CASE("reports are byte-identical apart from timing") {
    for (const std::vector<std::string> args :
         {std::vector<std::string>{"census", "--n", "2", "--k", "3"}, {"verify", "--n", "1", "--k", "4"},
          {"fit", "moments", "--k", "8"}, {"rqnk", "--q", "2", "--n", "2", "--k", "3", "--method", "kernel"}}) {
        const auto a = invoke(args);
        const auto b = invoke(args);
        CHECK(without_timing(a.report()).dump(2) == without_timing(b.report()).dump(2));
    }
}

TEST_CASE("exact integers are decimal strings") {
    const auto rep = invoke({"census", "--n", "2", "--k", "9"}).report();
    for (const auto& g : rep.at("gamma")) {
        CHECK(g.is_string());
    }
    CHECK(rep.at("gamma").at(4) == "1024128");
    CHECK(rep.at("tuples_scanned") == "1048576");
}

TEST_CASE("csv export") {
    TempDir dir;
    const auto path = dir.file("g.csv");
    REQUIRE(invoke({"census", "--n", "1", "--k", "9", "--csv", path}).code == 0);
    CHECK(slurp(path) == "i,gamma\n0,1\n1,3\n2,1020\n");
}

TEST_CASE("sharded census merges to the full distribution") {
    TempDir dir;
    std::vector<std::string> merge_args{"merge"};
    for (int s = 0; s < 3; ++s) {
        const auto path = dir.file("shard" + std::to_string(s) + ".json");
        const auto r = invoke({"census", "--n", "2", "--k", "4", "--shards", "3", "--shard-index", std::to_string(s), "--out", path});
        REQUIRE(r.code == 0);
        CHECK(r.report().at("complete") == false);
        merge_args.push_back(path);
    }
    const auto merged_path = dir.file("merged.json");
    merge_args.insert(merge_args.end(), {"--out", merged_path});
    const auto m = invoke(merge_args);
    REQUIRE(m.code == 0);
    CHECK(m.report().at("gamma") == invoke({"census", "--n", "2", "--k", "4"}).report().at("gamma"));
    CHECK(m.report().at("complete") == true);
    CHECK(invoke({"verify", "--input", merged_path}).code == 0);

    // an incomplete shard cannot be verified
    CHECK(invoke({"verify", "--input", merge_args[1]}).code != 0);
}

TEST_CASE("a corrupted report fails verification") {
    TempDir dir;
    const auto path = dir.file("bad.json");
    auto rep = invoke({"census", "--n", "2", "--k", "3"}).report();
    rep["gamma"][1] = "10";
    rep["gamma"][2] = std::to_string(std::stoll(rep["gamma"][2].get<std::string>()) - 1);
    std::ofstream(path) << rep.dump(2);
    const auto r = invoke({"verify", "--input", path});
    CHECK(r.code == 1);
    CHECK_FALSE(all_checks_ok(r.report()));
}

TEST_CASE("fit moments resolves the sign at k = 9") {
    const auto r = invoke({"fit", "moments", "--k", "9"});
    CHECK(r.code == 0);
    const auto rep = r.report();
    CHECK(rep.at("unique") == true);
    CHECK(rep.at("resolved").at("rank8_y3") == "-57511680");
    CHECK(all_checks_ok(rep));
    CHECK(invoke({"fit", "moments", "--k", "12"}).code != 0);
}

TEST_CASE("fit samples") {
    SUBCASE("unique and matching") {
        const auto r = invoke({"fit", "samples", "--i", "2", "--k", "2", "--max-n", "3"});
        CHECK(r.code == 0);
        CHECK(r.report().at("polynomial").at("text") == "Y^3 - 3*Y + 2");
    }
    SUBCASE("rank 6 at k = 7 from census alone is underdetermined") {
        const auto r = invoke({"fit", "samples", "--i", "6", "--k", "7", "--max-n", "3", "--roots", "1,2,4"});
        CHECK(r.code != 0);
        CHECK(r.report().at("system").at("status") == "underdetermined");
    }
    SUBCASE("pinning the leading coefficient still needs more samples") {
        const auto r = invoke({"fit", "samples", "--i", "6", "--k", "7", "--max-n", "3", "--roots", "1,2,4", "--leading", "127"});
        CHECK(r.code != 0);
        CHECK(r.report().at("system").at("status") == "underdetermined");
    }
    SUBCASE("a too-small degree bound is inconsistent with the samples") {
        const auto r = invoke({"fit", "samples", "--i", "2", "--k", "4", "--max-n", "3", "--degree", "1"});
        CHECK(r.code == 1);
        CHECK(r.report().at("system").at("status") == "inconsistent");
    }
    SUBCASE("the top rank defaults to degree k + 1") {
        const auto r = invoke({"fit", "samples", "--i", "3", "--k", "3", "--max-n", "4"});
        CHECK(r.code == 0);
        CHECK(r.report().at("params").at("degree") == 4);
    }
}
