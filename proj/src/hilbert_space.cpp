#include "genbath/hilbert_space.hpp"

#include "genbath/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace genbath {

HilbertSpace::HilbertSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw InvalidArgument("HilbertSpace needs at least one slot");
    }
    total_ = 1;
    for (auto d : dims_) {
        if (d < 1) {
            throw InvalidArgument("HilbertSpace slot dimensions must be >= 1");
        }
        total_ *= d;
    }
}

std::size_t HilbertSpace::dim(std::size_t slot) const {
    if (slot >= dims_.size()) {
        throw InvalidArgument(fmt::format("slot {} out of range for space {}", slot, to_string()));
    }
    return dims_[slot];
}

HilbertSpace HilbertSpace::tensor(const HilbertSpace& other) const {
    std::vector<std::size_t> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return HilbertSpace(std::move(d));
}

std::size_t HilbertSpace::stride(std::size_t slot) const {
    dim(slot);
    std::size_t s = 1;
    for (std::size_t k = slot + 1; k < dims_.size(); ++k) {
        s *= dims_[k];
    }
    return s;
}

std::string HilbertSpace::to_string() const {
    return fmt::format("[{}]", fmt::join(dims_, ", "));
}

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* where) {
    if (!(a == b)) {
        throw SpaceMismatch(fmt::format("{}: space {} does not match {}", where, a.to_string(),
                                        b.to_string()));
    }
}

} // namespace genbath
