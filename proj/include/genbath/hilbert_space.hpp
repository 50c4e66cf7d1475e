#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace genbath {

// Composite Hilbert space signature. Basis indices are row-major over the
// slots: for dims [2, N] the index of |q, n> is q * N + n.
class HilbertSpace {
public:
    HilbertSpace() : dims_{1} {}
    explicit HilbertSpace(std::vector<std::size_t> dims);

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t slots() const { return dims_.size(); }
    std::size_t dim(std::size_t slot) const;
    std::size_t total() const { return total_; }

    // Product space with `other` appended after this space's slots.
    HilbertSpace tensor(const HilbertSpace& other) const;

    // Stride of `slot` in the flattened index.
    std::size_t stride(std::size_t slot) const;

    std::string to_string() const;

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* where);

} // namespace genbath
