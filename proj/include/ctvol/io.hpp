#pragma once

#include <string>
#include <variant>

#include "ctvol/polytope.hpp"
#include "ctvol/simpcone.hpp"

namespace ctvol {

/** A polytope loaded from a file, in whichever representation it declared. */
using LoadedPolytope = std::variant<PolytopeStd, PolytopeH, PolytopeV>;

/** The "kind" tag the representation was declared with: std, hrep, or vrep. */
std::string kindName(const LoadedPolytope& p);

/**
 * Parse a polytope from JSON text. The object carries kind = "std" | "hrep" |
 * "vrep" and, accordingly, integer arrays A and b, rational arrays Aprime and
 * bprime, or an array of rational points named vertices. Rationals are "p/q"
 * strings or plain integers, never floats.
 *
 * @param context Label (usually the file name) used in error messages.
 * @throws ParseError On malformed JSON, missing or ill-typed fields.
 */
LoadedPolytope parsePolytope(const std::string& text, const std::string& context);

/** Load and parse a polytope file. @throws ParseError If unreadable. */
LoadedPolytope loadPolytope(const std::string& path);

/** Serialize a decomposition: sign, generators, and pivot product per cone,
 *  plus the invariant factor product and the ambient sizes n and r. */
std::string decompositionToJson(const Decomposition& dec);

/** Write decompositionToJson(dec) to a file. @throws ParseError If unwritable. */
void saveDecomposition(const Decomposition& dec, const std::string& path);

/** Parse a decomposition serialized by decompositionToJson. */
Decomposition parseDecomposition(const std::string& text, const std::string& context);

/** Load and parse a decomposition file. @throws ParseError If unreadable. */
Decomposition loadDecomposition(const std::string& path);

}  // namespace ctvol
