#pragma once

#include "cube2/cube.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cube2 {

/// Coordinate transition tables for the generalized moves. Because U, R and F
/// never touch the anchor slot, permutation and orientation coordinates move
/// independently.
struct MoveTables {
    std::vector<std::array<std::uint16_t, kNumGeneralizedMoves>> perm;  // 5040 rows
    std::vector<std::array<std::uint16_t, kNumGeneralizedMoves>> ori;   // 729 rows

    std::uint32_t next(std::uint32_t index, GeneralizedMove m) const {
        int k = static_cast<int>(m);
        return perm[index / kNumOriCoords][k] * kNumOriCoords + ori[index % kNumOriCoords][k];
    }
};

/// Built from cube_core's move definition on first use.
const MoveTables& move_tables();

inline constexpr int kMaxDepth = kGodsNumberQtm;

class DistanceTable {
public:
    static DistanceTable from_entries(std::vector<std::uint8_t> entries);

    std::uint8_t at(std::uint32_t index) const { return entries_[index]; }
    int distance(const CanonicalState& s) const { return entries_[rank(s)]; }
    std::span<const std::uint8_t> entries() const { return entries_; }
    /// histogram()[d] = number of states at distance d.
    const std::vector<std::uint64_t>& histogram() const { return histogram_; }
    int max_depth() const { return static_cast<int>(histogram_.size()) - 1; }

    friend bool operator==(const DistanceTable& a, const DistanceTable& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<std::uint8_t> entries_;
    std::vector<std::uint64_t> histogram_;
};

/// Breadth-first expansion from the solved state over the generalized moves.
DistanceTable build_distance_table();

struct PatternDB {
    std::vector<std::uint8_t> ori_db;   // indexed by ori_coord
    std::vector<std::uint8_t> perm_db;  // indexed by perm_coord

    int heuristic(std::uint32_t index) const {
        int a = ori_db[index % kNumOriCoords];
        int b = perm_db[index / kNumOriCoords];
        return a > b ? a : b;
    }
    int heuristic(const CanonicalState& s) const { return heuristic(rank(s)); }

    friend bool operator==(const PatternDB&, const PatternDB&) = default;
};

PatternDB build_pattern_dbs();

// Binary persistence.
//
//   magic "CUBE2DT\0" | version u32 LE (1) | metric u8 (0 = QTM)
//   | kind u8 (0 full, 1 ori-PDB, 2 perm-PDB) | count u32 LE | payload | crc32 LE

enum class TableKind : std::uint8_t { Full = 0, OriPdb = 1, PermPdb = 2 };

class TableFormatError : public std::runtime_error {
public:
    enum class Kind { Io, BadMagic, BadVersion, ChecksumMismatch, TruncatedFile, KindMismatch };

    TableFormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct TableFile {
    TableKind kind = TableKind::Full;
    std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> encode_table(TableKind kind, std::span<const std::uint8_t> payload);
TableFile decode_table(std::span<const std::uint8_t> bytes);

void write_table_file(const std::filesystem::path& path, TableKind kind,
                      std::span<const std::uint8_t> payload);
TableFile read_table_file(const std::filesystem::path& path);

void save(const DistanceTable& table, const std::filesystem::path& path);
DistanceTable load_distance_table(const std::filesystem::path& path);
void save(const PatternDB& pdb, const std::filesystem::path& ori_path,
          const std::filesystem::path& perm_path);
PatternDB load_pattern_dbs(const std::filesystem::path& ori_path,
                           const std::filesystem::path& perm_path);

// Standard file names inside a table directory.
inline constexpr const char* kDistanceFile = "distance.bin";
inline constexpr const char* kOriPdbFile = "ori_pdb.bin";
inline constexpr const char* kPermPdbFile = "perm_pdb.bin";

}  // namespace cube2
