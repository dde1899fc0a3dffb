#pragma once

#include <cstdint>
#include <string>

#include "speclab/fuchsian.hpp"

namespace speclab::table_io {

// Line-oriented cache format:
//   LSPEC v1 preset=octagon genus=2 maxlen=<T>
//   word=<letters> len=<17 sig. digits> prim=<0|1> pair=<index> p0=<0|1>
// Records are sorted by (length, canonical word). Unknown versions are
// rejected.
void write_table(const fuchsian::GeodesicTable& table, const std::string& path);

// Reads and fully revalidates: header version/preset, sortedness, pairing
// involution, p0 marks, and each stored length against the word's matrix.
fuchsian::GeodesicTable read_table(const std::string& path,
                                   const fuchsian::SurfaceGroup& g);

std::string serialize_table(const fuchsian::GeodesicTable& table);

// FNV-1a over the file bytes; reports embed this as table provenance.
std::uint64_t file_hash(const std::string& path);

}  // namespace speclab::table_io
