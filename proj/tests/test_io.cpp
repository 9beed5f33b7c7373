#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "randsvd/dmat.hpp"
#include "randsvd/errors.hpp"
#include "randsvd/matrix.hpp"

using namespace randsvd;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "randsvd_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("DMAT round-trip is bit-exact") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GaussianSampler s(seed);
        const std::size_t m = 1 + s.next_u64() % 12;
        const std::size_t n = 1 + s.next_u64() % 12;
        const DenseMatrix a = gaussian_matrix(s, m, n);
        const fs::path p = temp_file("roundtrip.dmat");
        write_dmat(p.string(), a);
        const DenseMatrix b = read_dmat(p.string());
        REQUIRE(b.rows() == m);
        REQUIRE(b.cols() == n);
        CHECK(std::memcmp(a.data().data(), b.data().data(),
                          a.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("DMAT round-trips special values") {
    DenseMatrix a(2, 3);
    a(0, 0) = 0.0;
    a(0, 1) = -0.0;
    a(0, 2) = 5e-324;  // smallest denormal
    a(1, 0) = -1.7976931348623157e308;
    a(1, 1) = 1.0 / 3.0;
    a(1, 2) = 1e-300;
    const fs::path p = temp_file("special.dmat");
    write_dmat(p.string(), a);
    const DenseMatrix b = read_dmat(p.string());
    CHECK(std::memcmp(a.data().data(), b.data().data(),
                      a.size() * sizeof(double)) == 0);
}

TEST_CASE("DMAT layout is exactly magic + dims + payload") {
    DenseMatrix a(1, 2);
    a(0, 0) = 1.0;
    const fs::path p = temp_file("layout.dmat");
    write_dmat(p.string(), a);
    const std::string bytes = read_bytes(p);
    REQUIRE(bytes.size() == 6 + 16 + 16);
    CHECK(bytes.compare(0, 6, "DMAT1\n") == 0);
    CHECK(static_cast<unsigned char>(bytes[6]) == 1);   // rows LE
    CHECK(static_cast<unsigned char>(bytes[14]) == 2);  // cols LE
}

TEST_CASE("bad magic is rejected with the file and offset") {
    const fs::path p = temp_file("badmagic.dmat");
    write_bytes(p, "NOPE!\n\0\0\0\0\0\0\0\0");
    try {
        read_dmat(p.string());
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
        CHECK(std::string(e.what()).find("offset 0") != std::string::npos);
        CHECK(e.offset() == 0);
        CHECK(e.path() == p.string());
    }
}

TEST_CASE("truncated payload is rejected with the byte offset") {
    GaussianSampler s(3);
    const DenseMatrix a = gaussian_matrix(s, 4, 4);
    const fs::path p = temp_file("truncated.dmat");
    write_dmat(p.string(), a);
    const std::string bytes = read_bytes(p);
    write_bytes(p, bytes.substr(0, bytes.size() - 10));
    try {
        read_dmat(p.string());
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(e.offset() == 22 + 16 * 8 - 10);
        CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    }
}

TEST_CASE("trailing bytes are rejected") {
    GaussianSampler s(4);
    const DenseMatrix a = gaussian_matrix(s, 2, 2);
    const fs::path p = temp_file("trailing.dmat");
    write_dmat(p.string(), a);
    write_bytes(p, read_bytes(p) + "x");
    CHECK_THROWS_AS(read_dmat(p.string()), IoError);
}

TEST_CASE("truncated header is rejected") {
    const fs::path p = temp_file("shortheader.dmat");
    write_bytes(p, std::string("DMAT1\n") + std::string(7, '\0'));
    CHECK_THROWS_AS(read_dmat(p.string()), IoError);
}

TEST_CASE("missing file is an IoError") {
    CHECK_THROWS_AS(read_dmat("/nonexistent/nowhere.dmat"), IoError);
}

TEST_CASE("stream round-trip") {
    GaussianSampler s(5);
    const DenseMatrix a = gaussian_matrix(s, 3, 5);
    std::stringstream buf;
    write_dmat(buf, a, "<buffer>");
    const DenseMatrix b = read_dmat(buf, "<buffer>");
    CHECK(std::memcmp(a.data().data(), b.data().data(),
                      a.size() * sizeof(double)) == 0);
}

TEST_SUITE_END();
