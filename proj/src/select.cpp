#include "rftforge/select.hpp"

#include "rftforge/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

namespace rftforge {

std::string canonical_key(const SampledPath& p) {
    std::string key;
    bool first = true;
    for (const EquationAnnotation& a : p.annotations) {
        if (!first) key.push_back(key_separator);
        first = false;
        for (char c : a.raw)
            if (!std::isspace(static_cast<unsigned char>(c))) key.push_back(c);
    }
    return key;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) { len = 1; cp = b0; }
        else if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
        else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
        else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }

        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) ok = false;
            else cp = (cp << 6) | (bk & 0x3F);
        }
        if (ok) {
            out.push_back(cp);
            i += len;
        } else {
            out.push_back(b0);
            ++i;
        }
    }
    return out;
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
    // Strip common prefix/suffix, then two-row DP over the rest.
    std::size_t lo = 0;
    std::size_t ea = a.size(), eb = b.size();
    while (lo < ea && lo < eb && a[lo] == b[lo]) ++lo;
    while (ea > lo && eb > lo && a[ea - 1] == b[eb - 1]) { --ea; --eb; }

    const std::size_t n = ea - lo;
    const std::size_t m = eb - lo;
    if (n == 0) return m;
    if (m == 0) return n;

    std::vector<std::size_t> row(m + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = diag + (a[lo + i - 1] == b[lo + j - 1] ? 0 : 1);
            diag = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
        }
    }
    return row[m];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(decode_utf8(a), decode_utf8(b));
}

std::vector<SampledPath> select_diverse(std::vector<SampledPath> paths) {
    struct Slot {
        SampledPath path;
        std::u32string text;
    };
    std::vector<Slot> selected;
    // Pairwise distances between current representatives; rows track slots.
    std::vector<std::vector<std::size_t>> dist;
    std::unordered_map<std::string, std::size_t> slot_of_key;

    std::string question;
    bool have_question = false;
    for (SampledPath& p : paths) {
        if (!have_question) {
            question = p.question_id;
            have_question = true;
        } else if (p.question_id != question) {
            throw Error(Errc::mixed_question,
                        "\"" + p.question_id + "\" mixed with \"" + question + "\"");
        }

        std::string key = canonical_key(p);
        std::u32string text = decode_utf8(p.text);
        auto [it, inserted] = slot_of_key.try_emplace(std::move(key), selected.size());
        if (inserted) {
            const std::size_t idx = selected.size();
            dist.emplace_back(idx + 1, 0);
            for (std::size_t j = 0; j < idx; ++j) {
                dist[idx][j] = levenshtein(text, selected[j].text);
                dist[j].push_back(dist[idx][j]);
            }
            selected.push_back(Slot{std::move(p), std::move(text)});
            continue;
        }

        const std::size_t s = it->second;
        std::vector<std::size_t> challenger_dist(selected.size(), 0);
        std::size_t challenger_sum = 0;
        std::size_t incumbent_sum = 0;
        for (std::size_t j = 0; j < selected.size(); ++j) {
            if (j == s) continue;
            challenger_dist[j] = levenshtein(text, selected[j].text);
            challenger_sum += challenger_dist[j];
            incumbent_sum += dist[s][j];
        }
        if (challenger_sum > incumbent_sum) {
            selected[s].path = std::move(p);
            selected[s].text = std::move(text);
            for (std::size_t j = 0; j < selected.size(); ++j) {
                if (j == s) continue;
                dist[s][j] = challenger_dist[j];
                dist[j][s] = challenger_dist[j];
            }
        }
    }

    std::vector<SampledPath> out;
    out.reserve(selected.size());
    for (Slot& s : selected) out.push_back(std::move(s.path));
    return out;
}

} // namespace rftforge
