#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bhe/cli.hpp"
#include "bhe/image_io.hpp"
#include "bhe/metrics.hpp"
#include "bhe/report.hpp"
#include "oracles.hpp"

using namespace bhe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("bhe_test_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::string> lines;
    for (std::string l; std::getline(f, l);) lines.push_back(l);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else cell += c;
    }
    cells.push_back(cell);
    return cells;
}

// Report lines with the runtime_ms column blanked.
std::vector<std::string> without_runtime(const std::string& path) {
    auto lines = lines_of(path);
    const auto header = split_csv(lines.at(0));
    const auto col = std::find(header.begin(), header.end(), "runtime_ms") - header.begin();
    for (auto& l : lines) {
        auto cells = split_csv(l);
        cells.at(col).clear();
        l.clear();
        for (const auto& c : cells) l += c + "|";
    }
    return lines;
}

std::string read_bytes(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("enhance command") {
    TempDir dir;
    std::mt19937_64 rng(1);
    write_image(oracle::random_image(rng, 24, 24, 40, 120), dir / "a.pgm");

    SUBCASE("happy path") {
        const auto r = run({"enhance", "--method", "he", "--input", dir / "a.pgm", "--output", dir / "b.pgm"});
        CHECK(r.code == 0);
        CHECK(read_image(dir / "b.pgm").same_shape(read_image(dir / "a.pgm")));
        CHECK(r.out.empty());
    }
    SUBCASE("unknown method") {
        const auto r = run({"enhance", "--method", "bogus", "--input", dir / "a.pgm", "--output", dir / "b.pgm"});
        CHECK(r.code == 2);
        CHECK(r.err.find("itsbpl") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "b.pgm"));
    }
    SUBCASE("constant image with metrics") {
        write_image(GrayImage(16, 16, 60), dir / "flat.pgm");
        const auto r = run({"enhance", "--method", "itsbpl", "--input", dir / "flat.pgm", "--output",
                            dir / "out.pgm", "--metrics"});
        CHECK(r.code == 0);
        CHECK(read_image(dir / "out.pgm") == GrayImage(16, 16, 60));
        std::istringstream lines(r.out);
        std::string header, row;
        std::getline(lines, header);
        std::getline(lines, row);
        CHECK(header == "ambe,sd,entropy,psnr,uiqi,eme_error,ssim");
        CHECK(split_csv(row).at(0) == "0");
        CHECK(split_csv(row).at(3) == "inf");
    }
    SUBCASE("lut dump") {
        const auto r = run({"enhance", "--method", "mvsbpl", "--input", dir / "a.pgm", "--output", dir / "b.pgm",
                            "--dump-lut", dir / "lut.csv"});
        CHECK(r.code == 0);
        const auto lines = lines_of(dir / "lut.csv");
        REQUIRE(lines.size() == 257);
        CHECK(lines[0] == "input,output");
        CHECK(lines[1].rfind("0,", 0) == 0);
    }
    SUBCASE("I/O failure") {
        const auto r = run({"enhance", "--method", "he", "--input", dir / "missing.pgm", "--output", dir / "b.pgm"});
        CHECK(r.code == 1);
    }
    SUBCASE("missing option") {
        CHECK(run({"enhance", "--method", "he"}).code == 2);
    }
}

TEST_CASE("metrics command") {
    TempDir dir;
    std::mt19937_64 rng(2);
    const auto a = oracle::random_image(rng, 20, 20);
    auto b = a;
    for (auto& p : b.pixels()) p = static_cast<std::uint8_t>(p / 2);
    write_image(a, dir / "a.pgm");
    write_image(b, dir / "b.pgm");
    const auto r = run({"metrics", "--input", dir / "b.pgm", "--reference", dir / "a.pgm", "--eme-block", "4"});
    CHECK(r.code == 0);
    std::ostringstream expected;
    write_metrics_row(expected, evaluate(a, b, 4));
    CHECK(r.out == expected.str());
    CHECK(run({"metrics", "--input", dir / "b.pgm", "--reference", dir / "nope.pgm"}).code == 1);
}

TEST_CASE("gen-corpus command") {
    TempDir dir;
    const auto r = run({"gen-corpus", "--seed", "3", "--count", "4", "--out", dir / "c", "--size", "32"});
    CHECK(r.code == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir.path / "c")) files += e.path().extension() == ".pgm";
    CHECK(files == 4);
    CHECK(read_image(dir / "c/synthetic_0000_brain.pgm").width() == 32);
}

TEST_CASE("bench command") {
    TempDir dir;
    const auto report = dir / "report.csv";
    const std::vector<std::string> args{"bench", "--corpus", "synthetic:1,5", "--methods", "all", "--report", report};
    const auto r = run(args);
    REQUIRE(r.code == 0);

    const auto lines = lines_of(report);
    CHECK(lines.size() == 46);
    CHECK(lines[0] == "image_id,method,ambe,sd,entropy,psnr,uiqi,eme_error,ssim,thresholds,runtime_ms,error");
    CHECK(lines[1].rfind("synthetic_0000_brain,bbhe,", 0) == 0);

    const auto pivot = lines_of(dir / "report_ambe.csv");
    REQUIRE(pivot.size() == 6);
    CHECK(split_csv(pivot[0]).size() == 10);
    CHECK(pivot[0] == "image_id,itsbpl,msbpl,mvsbpl,he,bbhe,dsihe,mmbebhe,bhepl,rlbhe");
    for (const auto* metric : {"sd", "entropy", "psnr", "uiqi", "eme_error", "ssim"}) {
        CHECK(lines_of(dir / (std::string("report_") + metric + ".csv")).size() == 6);
    }

    // Rerun: identical except for runtimes.
    const auto first = without_runtime(report);
    const auto first_pivot = read_bytes(dir / "report_psnr.csv");
    REQUIRE(run(args).code == 0);
    CHECK(without_runtime(report) == first);
    CHECK(read_bytes(dir / "report_psnr.csv") == first_pivot);
}

TEST_CASE("bench failure handling") {
    TempDir dir;
    fs::create_directories(dir.path / "empty");
    const auto empty = run({"bench", "--corpus", dir / "empty", "--report", dir / "r.csv"});
    CHECK(empty.code == 1);
    CHECK(empty.err.find("no images found") != std::string::npos);

    fs::create_directories(dir.path / "mixed");
    std::mt19937_64 rng(3);
    write_image(oracle::random_image(rng, 32, 32), dir / "mixed/good.pgm");
    write_image(oracle::random_image(rng, 8, 8), dir / "mixed/small.pgm");
    std::ofstream(dir / "mixed/bad.pgm") << "P5 garbage";
    const auto r = run({"bench", "--corpus", dir / "mixed", "--methods", "he,itsbpl", "--report", dir / "r.csv"});
    CHECK(r.code == 1);
    const auto lines = lines_of(dir / "r.csv");
    REQUIRE(lines.size() == 7);
    const auto header = split_csv(lines[0]);
    const auto err_col = std::find(header.begin(), header.end(), "error") - header.begin();
    int failed = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        const bool is_failed = !cells.at(err_col).empty();
        failed += is_failed;
        CHECK(is_failed == (cells[0] != "good.pgm"));
    }
    CHECK(failed == 4);

    CHECK(run({"bench", "--corpus", "synthetic:1,1", "--methods", "he,bogus", "--report", dir / "r.csv"}).code == 2);
}

TEST_CASE("dispatch") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"bench", "--help"}).code == 0);
}
