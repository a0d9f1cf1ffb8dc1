#pragma once

#include <cstdio>
#include <map>
#include <string>

#include "modsym.hpp"

// Disk cache for Hecke operator matrices.  One file per (level, sign, ell);
// the file name carries the content hash of the space presentation, so a cache
// populated against a different basis ordering (or p, or precision) is simply
// ignored rather than misread.
//
// Format "EISL", little-endian throughout:
//   magic   4 bytes "EISL"
//   version u32 = 1
//   M       u64
//   ell     u64
//   rows    u32
//   cols    u32
//   modulus u64
//   entries rows*cols u64 (row-major)

namespace eisq {

namespace detail {
inline void put_u32(std::string& s, uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back((char)(v >> (8 * i)));
}
inline void put_u64(std::string& s, uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back((char)(v >> (8 * i)));
}
inline bool get_u32(const std::string& s, size_t& off, uint32_t& v) {
    if (off + 4 > s.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= (uint32_t)(unsigned char)s[off + i] << (8 * i);
    off += 4;
    return true;
}
inline bool get_u64(const std::string& s, size_t& off, uint64_t& v) {
    if (off + 8 > s.size()) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= (uint64_t)(unsigned char)s[off + i] << (8 * i);
    off += 8;
    return true;
}
}  // namespace detail

inline std::string eisl_serialize(const Mat& A, uint64_t M, uint64_t ell) {
    std::string s;
    s += "EISL";
    detail::put_u32(s, 1);
    detail::put_u64(s, M);
    detail::put_u64(s, ell);
    detail::put_u32(s, (uint32_t)A.rows);
    detail::put_u32(s, (uint32_t)A.cols);
    detail::put_u64(s, A.R.m);
    for (uint64_t x : A.a) detail::put_u64(s, x);
    return s;
}

// Parses and validates against the expected context; nullopt on any mismatch.
inline std::optional<Mat> eisl_parse(const std::string& s, const ZmodRing& R, uint64_t M,
                                     uint64_t ell) {
    size_t off = 0;
    if (s.size() < 4 || s.compare(0, 4, "EISL") != 0) return std::nullopt;
    off = 4;
    uint32_t version = 0, rows = 0, cols = 0;
    uint64_t fM = 0, fell = 0, fm = 0;
    if (!detail::get_u32(s, off, version) || version != 1) return std::nullopt;
    if (!detail::get_u64(s, off, fM) || fM != M) return std::nullopt;
    if (!detail::get_u64(s, off, fell) || fell != ell) return std::nullopt;
    if (!detail::get_u32(s, off, rows) || !detail::get_u32(s, off, cols)) return std::nullopt;
    if (!detail::get_u64(s, off, fm) || fm != R.m) return std::nullopt;
    if (s.size() - off != (size_t)rows * cols * 8) return std::nullopt;
    Mat A(R, rows, cols);
    for (auto& x : A.a) {
        if (!detail::get_u64(s, off, x)) return std::nullopt;
        if (x >= R.m) return std::nullopt;
    }
    return A;
}

// Memoizing operator source for one ManinSpace, with optional disk backing.
struct OperatorCache {
    const ManinSpace* S = nullptr;
    std::string dir;  // empty = memory only
    std::map<uint64_t, Mat> mem;

    explicit OperatorCache(const ManinSpace& space, std::string cache_dir = "")
        : S(&space), dir(std::move(cache_dir)) {}

    std::string path_for(uint64_t ell) const {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s/t_%llu_%c_%llu_%016llx.eisl", dir.c_str(),
                      (unsigned long long)S->M, S->sign > 0 ? 'p' : 'm', (unsigned long long)ell,
                      (unsigned long long)S->content_key);
        return buf;
    }

    const Mat& get(uint64_t ell) {
        auto it = mem.find(ell);
        if (it != mem.end()) return it->second;
        if (!dir.empty()) {
            if (FILE* f = std::fopen(path_for(ell).c_str(), "rb")) {
                std::string blob;
                char chunk[65536];
                size_t n;
                while ((n = std::fread(chunk, 1, sizeof chunk, f)) > 0) blob.append(chunk, n);
                std::fclose(f);
                if (auto A = eisl_parse(blob, S->R, S->M, ell))
                    return mem.emplace(ell, std::move(*A)).first->second;
            }
        }
        Mat A = hecke_op(*S, ell);
        if (!dir.empty()) {
            std::string blob = eisl_serialize(A, S->M, ell);
            std::string tmp = path_for(ell) + ".tmp";
            if (FILE* f = std::fopen(tmp.c_str(), "wb")) {
                std::fwrite(blob.data(), 1, blob.size(), f);
                std::fclose(f);
                std::rename(tmp.c_str(), path_for(ell).c_str());
            }
        }
        return mem.emplace(ell, std::move(A)).first->second;
    }
};

}  // namespace eisq
