#pragma once

#include "k3/borcherds.hpp"
#include "k3/graph.hpp"
#include "k3/lattice.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace k3 {

// nlohmann::json keeps object keys in a std::map, so dump() is canonical:
// sorted keys, no whitespace. Rationals are strings "p/q".
using Json = nlohmann::json;

Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const RatVector& v);
Json to_json(const Rational& q);
Json to_json(const Integer& n);
Json lattice_json(const Lattice& L);  // {"basis_labels", "gram"}
Json graph_json(const WeightedGraph& g);
Json chamber_json(const Embedding& e, const Chamber& c, const IntVector& h);  // {weyl, walls}

IntVector int_vector(const Json& j);
RatVector rat_vector(const Json& j);

// writes dump() plus a newline, creating directories; throws on I/O errors
void write_json(const Json& j, const std::string& path);
void write_text(const std::string& text, const std::string& path);

// ---- memo tables under $K3_CACHE_DIR (nothing happens when it is unset)

std::optional<std::string> cache_dir();
std::optional<Json> cache_load(const std::string& key);
void cache_store(const std::string& key, const Json& value);
// a short stable digest of any JSON value, for cache keys
std::string digest(const Json& j);

// chamber_walls with the result memoized by (S, embedding, weyl). A loaded
// chamber is re-checked cheaply: walls primitive, outer roots of norm -2,
// witnesses on the negative side of their own wall.
Chamber chamber_walls_cached(const Embedding& e, const IntVector& weyl, const ChamberOptions& opt = {});

}  // namespace k3
