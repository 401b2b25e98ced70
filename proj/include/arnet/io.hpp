#pragma once

#include <iosfwd>
#include <string>

#include "arnet/types.hpp"

namespace arnet {

enum class NetworkFormat { EdgeList, CoordMatrix, DenseCsv };

// Maps the CLI spellings "edge-list", "coord", "dense-csv".
NetworkFormat parse_network_format(const std::string& name);
std::string format_name(NetworkFormat format);

// Loads a network from disk.
//
//  EdgeList:    whitespace-separated "i j w" lines, '#' comments, an optional
//               header line. Integer endpoints are used as 0-based node ids;
//               otherwise endpoints are treated as labels and mapped to dense
//               indices in order of first appearance. A "# nodes: N" comment
//               pins the node count (isolated trailing nodes get their decimal
//               index as label).
//  CoordMatrix: symmetric sparse coordinate text ('%' comments, a
//               "rows cols nnz" size line, then 1-based "i j v" entries).
//  DenseCsv:    n comma-separated rows of n values.
//
// Explicit diagonal entries in EdgeList or CoordMatrix files mark the loaded
// network's diagonal as observed; DenseCsv always carries diagonal cells, so
// it keeps the unobserved-network default.
//
// Duplicate entries that disagree (in either orientation) raise
// AsymmetricInput; unreadable or ill-shaped files raise MalformedFile; NaN or
// infinite weights raise NonFiniteWeight.
SymmetricNetwork load_network(const std::string& path, NetworkFormat format);

// Inverse of load_network up to formatting: a save/load round trip restores
// the weight matrix entrywise exactly. Node labels are not persisted.
void save_network(const SymmetricNetwork& net, const std::string& path,
                  NetworkFormat format);

// Replaces every off-diagonal weight c with log(1 + c), for count data.
// Requires nonnegative off-diagonal weights (NegativeWeight otherwise).
SymmetricNetwork log1p_transform(const SymmetricNetwork& net);

}  // namespace arnet
