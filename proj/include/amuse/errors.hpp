#ifndef AMUSE_ERRORS_HPP
#define AMUSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amuse {

// Preconditions violated by the caller (bad lengths, ranges, formats).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Message does not fit the carrier (names both quantities in the message).
class CapacityError : public std::runtime_error {
public:
    CapacityError(std::size_t needed, std::size_t available)
        : std::runtime_error("capacity exceeded: message needs " + std::to_string(needed) +
                             " carrier slots, only " + std::to_string(available) + " available"),
          needed(needed),
          available(available) {}
    std::size_t needed;
    std::size_t available;
};

// decode() received no sub-messages at all.
class EmptyInputError : public std::runtime_error {
public:
    EmptyInputError() : std::runtime_error("decode: empty input") {}
};

// decode() received sub-messages but rejected every one of them.
class AllInvalidError : public std::runtime_error {
public:
    AllInvalidError() : std::runtime_error("decode: all sub-messages invalid") {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace amuse

#endif
