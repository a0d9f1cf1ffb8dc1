#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "eisq/opcache.hpp"

using namespace eisq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("eisq_test_cache_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("operator blob round-trips") {
    ZmodRing R(5, 6);
    ManinSpace S(121, +1, R);
    Mat A = hecke_op(S, 2);

    std::string blob = eisl_serialize(A, S.M, 2);
    auto B = eisl_parse(blob, R, S.M, 2);
    REQUIRE(B.has_value());
    CHECK(*B == A);
}

TEST_CASE("parser rejects every header mismatch") {
    ZmodRing R(5, 6);
    ManinSpace S(121, +1, R);
    Mat A = hecke_op(S, 3);
    std::string blob = eisl_serialize(A, S.M, 3);

    CHECK(eisl_parse(blob, R, S.M, 3).has_value());

    SECTION("wrong operator index") { CHECK_FALSE(eisl_parse(blob, R, S.M, 5).has_value()); }
    SECTION("wrong level") { CHECK_FALSE(eisl_parse(blob, R, 169, 3).has_value()); }
    SECTION("wrong modulus") {
        ZmodRing R2(5, 4);
        CHECK_FALSE(eisl_parse(blob, R2, S.M, 3).has_value());
    }
    SECTION("bad magic") {
        std::string t = blob;
        t[0] = 'X';
        CHECK_FALSE(eisl_parse(t, R, S.M, 3).has_value());
    }
    SECTION("bad version") {
        std::string t = blob;
        t[4] = 9;
        CHECK_FALSE(eisl_parse(t, R, S.M, 3).has_value());
    }
    SECTION("truncated") {
        CHECK_FALSE(eisl_parse(blob.substr(0, blob.size() - 1), R, S.M, 3).has_value());
        CHECK_FALSE(eisl_parse(blob.substr(0, 10), R, S.M, 3).has_value());
    }
    SECTION("trailing garbage") {
        CHECK_FALSE(eisl_parse(blob + "x", R, S.M, 3).has_value());
    }
    SECTION("out-of-range entry") {
        // smuggle an entry >= p^e by patching the first entry's bytes
        std::string t = blob;
        size_t header = 4 + 4 + 8 + 8 + 4 + 4 + 8;
        for (int i = 0; i < 8; ++i) t[header + i] = (char)0xff;
        CHECK_FALSE(eisl_parse(t, R, S.M, 3).has_value());
    }
}

TEST_CASE("disk cache: write, reload, survive corruption") {
    TempDir tmp;
    ZmodRing R(5, 6);
    ManinSpace S(121, +1, R);
    Mat fresh = hecke_op(S, 2);

    OperatorCache c1(S, tmp.path.string());
    CHECK(c1.get(2) == fresh);
    REQUIRE(fs::exists(c1.path_for(2)));

    // a second cache object reads the file instead of recomputing
    OperatorCache c2(S, tmp.path.string());
    CHECK(c2.get(2) == fresh);

    // corrupt the file: the cache must fall back to recomputing (and rewrite)
    {
        std::ofstream f(c1.path_for(2), std::ios::binary | std::ios::trunc);
        f << "garbage";
    }
    OperatorCache c3(S, tmp.path.string());
    CHECK(c3.get(2) == fresh);

    // memory-only mode never touches disk
    OperatorCache c4(S);
    CHECK(c4.get(2) == fresh);
    CHECK(c4.get(2) == fresh);  // second call hits the memo
}

TEST_CASE("cache keys separate sign, level, operator") {
    TempDir tmp;
    ZmodRing R(5, 6);
    ManinSpace Sp(121, +1, R), Sm(121, -1, R);
    OperatorCache cp(Sp, tmp.path.string()), cm(Sm, tmp.path.string());
    CHECK(cp.path_for(2) != cm.path_for(2));
    CHECK(cp.path_for(2) != cp.path_for(3));

    // warm both; files must coexist and reload to the right matrices
    Mat a = cp.get(2), b = cm.get(2);
    OperatorCache cp2(Sp, tmp.path.string()), cm2(Sm, tmp.path.string());
    CHECK(cp2.get(2) == a);
    CHECK(cm2.get(2) == b);
}
