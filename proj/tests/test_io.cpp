#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qw/io.hpp"

using namespace qw;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "qwalk_io_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

RealMatrix sample_matrix() {
    RealMatrix m(3, 4);
    double v = 0.0;
    for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t x = 0; x < 4; ++x) m(t, x) = (v += 0.1237) / 3.0;
    return m;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    for (const double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 544.56521739130426}) {
        const std::string s = io::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("long-form distributions CSV round-trips bitwise") {
    const RealMatrix m = sample_matrix();
    const fs::path p = temp_dir() / "long.csv";
    io::atomic_write_file(p, io::distributions_csv_long(m));
    CHECK(io::read_distributions_csv(p) == m);
}

TEST_CASE("wide-form distributions CSV round-trips bitwise") {
    const RealMatrix m = sample_matrix();
    const fs::path p = temp_dir() / "wide.csv";
    io::atomic_write_file(p, io::distributions_csv_wide(m));
    CHECK(io::read_distributions_csv(p) == m);
}

TEST_CASE("malformed distributions CSVs are rejected") {
    const fs::path dir = temp_dir();

    write_text(dir / "bad_header.csv", "a,b,c\n0,0,1\n");
    CHECK_THROWS_AS(io::read_distributions_csv(dir / "bad_header.csv"), io::CsvError);

    write_text(dir / "unsorted.csv", "t,x,p\n0,1,0.5\n0,0,0.5\n");
    CHECK_THROWS_AS(io::read_distributions_csv(dir / "unsorted.csv"), io::CsvError);

    write_text(dir / "ragged.csv", "t,x,p\n0,0,0.5\n0,1,0.5\n1,0,1\n");
    CHECK_THROWS_AS(io::read_distributions_csv(dir / "ragged.csv"), io::CsvError);

    write_text(dir / "notnum.csv", "t,x,p\n0,0,zebra\n");
    CHECK_THROWS_AS(io::read_distributions_csv(dir / "notnum.csv"), io::CsvError);

    CHECK_THROWS_AS(io::read_distributions_csv(dir / "missing.csv"), io::CsvError);
}

TEST_CASE("moments CSV round-trips") {
    MomentSeries s;
    for (int t = 0; t < 5; ++t) {
        s.t.push_back(t);
        s.mean_displacement.push_back(0.31 * t - 1.0);
        s.variance.push_back(2.7 * t);
        s.degenerate.push_back(0);
    }
    const fs::path p = temp_dir() / "moments.csv";
    io::atomic_write_file(p, io::moments_csv(s));
    const MomentSeries back = io::read_moments_csv(p);
    CHECK(back.t == s.t);
    CHECK(back.mean_displacement == s.mean_displacement);
    CHECK(back.variance == s.variance);

    write_text(temp_dir() / "badm.csv", "t,mean,var\n0,0,0\n");
    CHECK_THROWS_AS(io::read_moments_csv(temp_dir() / "badm.csv"), io::CsvError);
}

TEST_CASE("atomic write replaces content and leaves no temp file") {
    const fs::path p = temp_dir() / "atomic.txt";
    io::atomic_write_file(p, "first");
    io::atomic_write_file(p, "second");
    std::ifstream in(p);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("manifest config echo round-trips to an equal WalkConfig") {
    WalkConfig c;
    c.d = 501;
    c.theta = std::numbers::pi / 4;
    c.q = 1;
    c.r = 0.9;
    c.field = FieldKind::SpinPosition;
    c.steps = 400;
    c.realizations = 1000;
    c.master_seed = 0xDEADBEEFCAFEBABEull;

    const std::string manifest = io::manifest_json(c, 1.25, {"distributions.csv", "moments.csv"});
    CHECK(io::config_from_manifest_json(manifest) == c);
}

TEST_CASE("field kind strings") {
    for (const FieldKind f : {FieldKind::None, FieldKind::SpinPosition, FieldKind::Electric})
        CHECK(io::field_from_string(io::field_to_string(f)) == f);
    CHECK_THROWS_AS(io::field_from_string("x"), std::invalid_argument);
}
