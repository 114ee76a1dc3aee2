#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bittp/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "bittp");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = bittp::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
    return std::string(BITTP_DATA_DIR) + "/instances/" + name;
}

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "bittp_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

const std::vector<std::string> kFast{"--sweeps", "500", "--reads", "8", "--segments", "3"};

std::vector<std::string> solve_args(const std::string& instance, std::vector<std::string> extra) {
    std::vector<std::string> args{"solve", "--instance", instance};
    args.insert(args.end(), kFast.begin(), kFast.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

} // namespace

TEST_CASE("missing instance is a parse error") {
    const auto r = run({"solve", "--instance", "/nonexistent/x.ttp"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run({"validate", "--instance", "/nonexistent/x.ttp"}).code == 2);
}

TEST_CASE("usage errors are configuration errors") {
    CHECK(run({}).code == 3);
    CHECK(run({"solve"}).code == 3);
    CHECK(run({"solve", "--instance", data("toy3.json"), "--segments", "0"}).code == 3);
    CHECK(run({"solve", "--instance", data("toy3.json"), "--mode", "spiral"}).code == 3);
    CHECK(run({"solve", "--instance", data("toy3.json"), "--backend", "remote"}).code == 3);
}

TEST_CASE("bad config files") {
    const auto dir = scratch();
    write(dir / "unknown.json", R"({"segments": 2, "colour": "red"})");
    write(dir / "broken.json", "{segments: ");
    write(dir / "typed.json", R"({"segments": "two"})");
    CHECK(run({"solve", "--instance", data("toy3.json"), "--config", (dir / "unknown.json").string()}).code == 3);
    CHECK(run({"solve", "--instance", data("toy3.json"), "--config", (dir / "broken.json").string()}).code == 3);
    CHECK(run({"solve", "--instance", data("toy3.json"), "--config", (dir / "typed.json").string()}).code == 3);
}

TEST_CASE("an instance without items yields one point") {
    const auto r = run(solve_args(data("toy3_empty.json"), {}));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["points"].size() == 1);
    CHECK(doc["points"][0]["f"] == 15.0);
    CHECK(doc["points"][0]["g"] == 0.0);
}

TEST_CASE("solve writes the front and a timestamped report") {
    const auto dir = scratch();
    const auto front = dir / "toy3.front.json";
    const auto r = run(solve_args(data("toy3.json"), {"--out", front.string(), "--exact-bounds", "--seed", "4"}));
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto doc = nlohmann::json::parse(slurp(front));
    CHECK(doc["instance"] == "toy3");
    CHECK(doc["variables"]["compact"] == 10);
    CHECK(doc.contains("hv"));
    CHECK_FALSE(doc.contains("timestamp"));
    const auto report = nlohmann::json::parse(slurp(dir / "toy3.front.report.json"));
    CHECK(report.contains("timestamp"));
    CHECK(report["bands"].size() == 3);

    const auto csv = run(solve_args(data("toy3.json"), {"--format", "csv", "--exact-bounds"}));
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("band_index,f,g,iterations\n", 0) == 0);
}

TEST_CASE("equal seeds give byte-identical fronts") {
    const auto dir = scratch();
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    const std::string inst = data("syn5_n4_unc.ttp");
    REQUIRE(run(solve_args(inst, {"--seed", "9", "--out", a.string()})).code == 0);
    REQUIRE(run(solve_args(inst, {"--seed", "9", "--out", b.string(), "--concurrency", "3"})).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("compare") {
    const auto dir = scratch();
    write(dir / "small.json", R"({"points": [{"f": 1, "g": -1}, {"f": 3, "g": -4}]})");
    write(dir / "large.json", R"({"points": [{"f": 1, "g": -1}, {"f": 2, "g": -3}, {"f": 3, "g": -4}]})");
    const auto same = run({"compare", (dir / "small.json").string(), (dir / "small.json").string()});
    REQUIRE(same.code == 0);
    std::istringstream lines(same.out);
    std::string norm, header, first, second;
    std::getline(lines, norm);
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(norm.rfind("# normalization", 0) == 0);
    CHECK(header == "front\tpoints\thv");
    CHECK(first.substr(first.rfind('\t')) == second.substr(second.rfind('\t')));

    const auto sup = run({"compare", (dir / "small.json").string(), (dir / "large.json").string()});
    REQUIRE(sup.code == 0);
    auto hv_of = [](const std::string& text, std::size_t row) {
        std::istringstream in(text);
        std::string line;
        for (std::size_t i = 0; i < row + 2; ++i) {
            std::getline(in, line);
        }
        std::getline(in, line);
        return std::stod(line.substr(line.rfind('\t') + 1));
    };
    CHECK(hv_of(sup.out, 1) > hv_of(sup.out, 0));

    write(dir / "bad.json", R"({"pts": []})");
    CHECK(run({"compare", (dir / "bad.json").string()}).code == 2);
    CHECK(run({"compare", (dir / "small.json").string(), "--target", "3"}).code == 3);
}

TEST_CASE("oracle command") {
    const auto r = run({"oracle", "--instance", data("toy3.json")});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["points"].size() == 2);
    CHECK(doc["points"][0]["f"] == 15.0);
    CHECK(doc["points"][1]["g"] == -10.0);
    CHECK(run({"oracle", "--instance", data("toy3.json"), "--band", "-5", "-3"}).code == 4);
    CHECK(run({"oracle", "--instance", data("syn20_n19_unc.ttp")}).code == 3);
}

TEST_CASE("validate prints the header") {
    const auto r = run({"validate", "--instance", data("syn6_n5_unc.ttp")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("cities: 6") != std::string::npos);
    CHECK(r.out.find("items: 5") != std::string::npos);
}
