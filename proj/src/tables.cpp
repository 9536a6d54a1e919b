#include "cube2/tables.hpp"

#include <algorithm>
#include <zlib.h>

#include <bit>
#include <cstring>
#include <deque>
#include <fstream>
#include <iterator>

namespace cube2 {
namespace {

constexpr std::array<char, 8> kMagic = {'C', 'U', 'B', 'E', '2', 'D', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kMetricQtm = 0;
constexpr std::size_t kHeaderSize = 8 + 4 + 1 + 1 + 4;
constexpr std::uint8_t kUnvisited = 0xFF;

void put_u32(std::uint8_t* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
    return v;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> payload) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; payloads here are far below 4 GiB.
    crc = crc32(crc, payload.data(), static_cast<uInt>(payload.size()));
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> bfs_abstract(
    std::size_t size, const std::vector<std::array<std::uint16_t, kNumGeneralizedMoves>>& moves) {
    std::vector<std::uint8_t> dist(size, kUnvisited);
    std::deque<std::uint32_t> queue = {0};
    dist[0] = 0;
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (auto next : moves[cur]) {
            if (dist[next] == kUnvisited) {
                dist[next] = static_cast<std::uint8_t>(dist[cur] + 1);
                queue.push_back(next);
            }
        }
    }
    return dist;
}

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableFormatError(TableFormatError::Kind::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TableFile read_expecting(const std::filesystem::path& path, TableKind kind, std::size_t count) {
    TableFile file;
    try {
        file = read_table_file(path);
    } catch (const TableFormatError& e) {
        throw TableFormatError(e.kind(), path.string() + ": " + e.what());
    }
    if (file.kind != kind || file.payload.size() != count) {
        throw TableFormatError(TableFormatError::Kind::KindMismatch,
                               path.string() + ": unexpected table kind or entry count");
    }
    return file;
}

}  // namespace

const MoveTables& move_tables() {
    static const MoveTables tables = [] {
        MoveTables t;
        t.perm.resize(kNumPermCoords);
        t.ori.resize(kNumOriCoords);
        for (std::uint32_t pc = 0; pc < kNumPermCoords; ++pc) {
            auto s = unrank(pc * kNumOriCoords);
            for (auto m : kAllGeneralizedMoves)
                t.perm[pc][static_cast<int>(m)] = static_cast<std::uint16_t>(perm_coord(apply(s, m)));
        }
        for (std::uint32_t oc = 0; oc < kNumOriCoords; ++oc) {
            auto s = unrank(oc);
            for (auto m : kAllGeneralizedMoves)
                t.ori[oc][static_cast<int>(m)] = static_cast<std::uint16_t>(ori_coord(apply(s, m)));
        }
        return t;
    }();
    return tables;
}

DistanceTable DistanceTable::from_entries(std::vector<std::uint8_t> entries) {
    if (entries.size() != kNumStates)
        throw std::invalid_argument("distance table must have one entry per canonical state");
    DistanceTable t;
    t.entries_ = std::move(entries);
    for (auto d : t.entries_) {
        if (d == kUnvisited) throw std::invalid_argument("distance table has unreached states");
        if (d >= t.histogram_.size()) t.histogram_.resize(d + 1, 0);
        ++t.histogram_[d];
    }
    return t;
}

DistanceTable build_distance_table() {
    const auto& mt = move_tables();
    constexpr std::size_t kWords = (kNumStates + 63) / 64;
    std::vector<std::uint64_t> visited(kWords, 0), frontier(kWords, 0), next(kWords, 0);
    std::vector<std::uint8_t> dist(kNumStates, kUnvisited);

    visited[0] |= 1;
    frontier[0] |= 1;
    dist[0] = 0;
    for (std::uint8_t depth = 0;; ++depth) {
        bool grew = false;
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t w = 0; w < kWords; ++w) {
            for (std::uint64_t bits = frontier[w]; bits; bits &= bits - 1) {
                auto index = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
                for (auto m : kAllGeneralizedMoves) {
                    auto n = mt.next(index, m);
                    std::uint64_t bit = std::uint64_t{1} << (n % 64);
                    if (visited[n / 64] & bit) continue;
                    visited[n / 64] |= bit;
                    next[n / 64] |= bit;
                    dist[n] = static_cast<std::uint8_t>(depth + 1);
                    grew = true;
                }
            }
        }
        if (!grew) break;
        frontier.swap(next);
    }
    return DistanceTable::from_entries(std::move(dist));
}

PatternDB build_pattern_dbs() {
    const auto& mt = move_tables();
    PatternDB pdb;
    pdb.ori_db = bfs_abstract(kNumOriCoords, mt.ori);
    pdb.perm_db = bfs_abstract(kNumPermCoords, mt.perm);
    return pdb;
}

std::vector<std::uint8_t> encode_table(TableKind kind, std::span<const std::uint8_t> payload) {
    std::vector<std::uint8_t> out(kHeaderSize + payload.size() + 4);
    std::copy(kMagic.begin(), kMagic.end(), out.begin());
    put_u32(&out[8], kVersion);
    out[12] = kMetricQtm;
    out[13] = static_cast<std::uint8_t>(kind);
    put_u32(&out[14], static_cast<std::uint32_t>(payload.size()));
    std::copy(payload.begin(), payload.end(), out.begin() + kHeaderSize);
    put_u32(&out[kHeaderSize + payload.size()], crc32_of(payload));
    return out;
}

TableFile decode_table(std::span<const std::uint8_t> bytes) {
    using K = TableFormatError::Kind;
    if (bytes.size() < kMagic.size()) throw TableFormatError(K::TruncatedFile, "file shorter than magic");
    if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
        throw TableFormatError(K::BadMagic, "not a cube table file");
    if (bytes.size() < kHeaderSize) throw TableFormatError(K::TruncatedFile, "truncated header");
    if (get_u32(bytes, 8) != kVersion)
        throw TableFormatError(K::BadVersion, "unsupported version " + std::to_string(get_u32(bytes, 8)));
    if (bytes[12] != kMetricQtm) throw TableFormatError(K::BadVersion, "unsupported metric");
    if (bytes[13] > static_cast<std::uint8_t>(TableKind::PermPdb))
        throw TableFormatError(K::KindMismatch, "unknown table kind");

    std::uint32_t count = get_u32(bytes, 14);
    if (bytes.size() < kHeaderSize + std::size_t{count} + 4)
        throw TableFormatError(K::TruncatedFile, "payload or checksum missing");
    if (bytes.size() > kHeaderSize + std::size_t{count} + 4)
        throw TableFormatError(K::ChecksumMismatch, "trailing bytes after checksum");

    auto payload = bytes.subspan(kHeaderSize, count);
    if (get_u32(bytes, kHeaderSize + count) != crc32_of(payload))
        throw TableFormatError(K::ChecksumMismatch, "payload checksum mismatch");

    return {static_cast<TableKind>(bytes[13]), {payload.begin(), payload.end()}};
}

void write_table_file(const std::filesystem::path& path, TableKind kind,
                      std::span<const std::uint8_t> payload) {
    auto bytes = encode_table(kind, payload);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw TableFormatError(TableFormatError::Kind::Io, "cannot write " + path.string());
}

TableFile read_table_file(const std::filesystem::path& path) { return decode_table(read_all(path)); }

void save(const DistanceTable& table, const std::filesystem::path& path) {
    write_table_file(path, TableKind::Full, table.entries());
}

DistanceTable load_distance_table(const std::filesystem::path& path) {
    auto file = read_expecting(path, TableKind::Full, kNumStates);
    return DistanceTable::from_entries(std::move(file.payload));
}

void save(const PatternDB& pdb, const std::filesystem::path& ori_path,
          const std::filesystem::path& perm_path) {
    write_table_file(ori_path, TableKind::OriPdb, pdb.ori_db);
    write_table_file(perm_path, TableKind::PermPdb, pdb.perm_db);
}

PatternDB load_pattern_dbs(const std::filesystem::path& ori_path,
                           const std::filesystem::path& perm_path) {
    PatternDB pdb;
    pdb.ori_db = read_expecting(ori_path, TableKind::OriPdb, kNumOriCoords).payload;
    pdb.perm_db = read_expecting(perm_path, TableKind::PermPdb, kNumPermCoords).payload;
    return pdb;
}

}  // namespace cube2
