#pragma once

#include "rftforge/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rftforge {

// Dedup identity of a path: each annotation's raw text with all
// whitespace removed, joined in annotation order by U+001F. Operand or
// equation reordering changes the key; whitespace-only edits do not.
inline constexpr char key_separator = '\x1f';

std::string canonical_key(const SampledPath& p);

// UTF-8 decode to Unicode scalar values; bytes that are not valid UTF-8
// are taken as single code points so the distance stays total.
std::u32string decode_utf8(std::string_view s);

// Edit distance with unit insert/delete/substitute costs.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(const std::u32string& a, const std::u32string& b);

// Greedy one-representative-per-key selection. Paths are processed in
// input order: a new key appends its path, a seen key challenges the
// incumbent, which is replaced iff the challenger's summed distance to
// the other selected paths strictly exceeds the incumbent's. Output order
// is key-first-seen order. Throws Errc::mixed_question.
std::vector<SampledPath> select_diverse(std::vector<SampledPath> paths);

} // namespace rftforge
