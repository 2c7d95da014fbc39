#pragma once

#include <stdexcept>
#include <string>

namespace rftforge {

enum class Errc {
    malformed_record,
    answer_missing,
    answer_unparseable,
    fraction_out_of_range,
    parse_error,
    division_by_zero,
    overflow,
    mixed_question,
    unknown_question,
    insufficient_samples,
    degenerate_input,
    invalid_argument,
    data_error,
    io_error,
};

const char* errc_name(Errc c);

// Library-wide exception. `offset` is a byte offset into the offending
// string for parse errors, npos otherwise.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(Errc code, std::string message, std::size_t offset = npos)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          offset_(offset) {}

    Errc code() const noexcept { return code_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Errc code_;
    std::size_t offset_;
};

} // namespace rftforge
