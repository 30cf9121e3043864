#ifndef FRECHET_ERRORS_HPP
#define FRECHET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frechet {

/// Which membership constraint a candidate pmf broke.
enum class Constraint { Length, Negative, Sum, Margin, Class };

/// Input does not satisfy a documented constraint (bad pmf, bad class,
/// polynomial outside the ideal, dimension guard...).
class ValidationError : public std::runtime_error {
public:
    ValidationError(Constraint which, std::size_t index, const std::string& what)
        : std::runtime_error(what), which_(which), index_(index) {}
    explicit ValidationError(const std::string& what) : ValidationError(Constraint::Class, 0, what) {}

    Constraint constraint() const { return which_; }
    /// 1-based coordinate or margin number when meaningful, otherwise 0.
    std::size_t index() const { return index_; }

private:
    Constraint which_;
    std::size_t index_;
};

/// A postcondition that the mathematics guarantees did not hold.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace frechet

#endif  // FRECHET_ERRORS_HPP
