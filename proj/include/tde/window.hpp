#ifndef TDE_WINDOW_HPP
#define TDE_WINDOW_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "tde/errors.hpp"

namespace tde {

/// Integer lattice coordinate alpha in Z^d.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> components) : components_(std::move(components)) {}
    MultiIndex(std::initializer_list<int> components) : components_(components) {}

    static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

    /// Unit index along `axis` scaled by `value`.
    static MultiIndex axis(int dim, int axis, int value)
    {
        MultiIndex m = zero(dim);
        m.components_[static_cast<std::size_t>(axis)] = value;
        return m;
    }

    int dim() const { return static_cast<int>(components_.size()); }
    int operator[](int k) const { return components_[static_cast<std::size_t>(k)]; }
    int& operator[](int k) { return components_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& components() const { return components_; }

    int sup_norm() const
    {
        int n = 0;
        for (int c : components_) n = std::max(n, std::abs(c));
        return n;
    }

    bool is_zero() const
    {
        return std::all_of(components_.begin(), components_.end(), [](int c) { return c == 0; });
    }

    /// Number of nonzero components; 1 means the index lies on a coordinate axis.
    int support_size() const
    {
        return static_cast<int>(std::count_if(components_.begin(), components_.end(), [](int c) { return c != 0; }));
    }

    MultiIndex operator-() const
    {
        MultiIndex m = *this;
        for (int& c : m.components_) c = -c;
        return m;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
    {
        require_same_dim(a, b);
        MultiIndex m = a;
        for (int k = 0; k < a.dim(); ++k) m[k] += b[k];
        return m;
    }

    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) { return a + (-b); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m)
    {
        os << '(';
        for (int k = 0; k < m.dim(); ++k) os << (k ? "," : "") << m[k];
        return os << ')';
    }

private:
    static void require_same_dim(const MultiIndex& a, const MultiIndex& b)
    {
        if (a.dim() != b.dim()) throw InputError("multi-index dimension mismatch");
    }

    std::vector<int> components_;
};

/// The cube {alpha : |alpha|_inf <= radius} in Z^dim.
///
/// Enumeration is lexicographic on (alpha_1, ..., alpha_d), first component
/// most significant. With this order negation maps offset o to size()-1-o and
/// the origin sits at offset (size()-1)/2.
class Window {
public:
    Window(int dim, int radius) : dim_(dim), radius_(radius)
    {
        if (dim < 1) throw InputError("window dimension must be >= 1");
        if (radius < 0) throw InputError("window radius must be >= 0");
        size_ = 1;
        for (int k = 0; k < dim; ++k) size_ *= static_cast<std::size_t>(side());
    }

    int dim() const { return dim_; }
    int radius() const { return radius_; }
    int side() const { return 2 * radius_ + 1; }
    std::size_t size() const { return size_; }
    std::size_t origin_offset() const { return (size_ - 1) / 2; }
    std::size_t mirror(std::size_t offset) const { return size_ - 1 - offset; }

    bool contains(const MultiIndex& alpha) const { return alpha.dim() == dim_ && alpha.sup_norm() <= radius_; }

    std::size_t offset(const MultiIndex& alpha) const
    {
        if (!contains(alpha)) throw InputError("multi-index outside window");
        std::size_t o = 0;
        for (int k = 0; k < dim_; ++k) o = o * static_cast<std::size_t>(side()) + static_cast<std::size_t>(alpha[k] + radius_);
        return o;
    }

    MultiIndex index(std::size_t offset) const
    {
        if (offset >= size_) throw InputError("window offset out of range");
        MultiIndex alpha = MultiIndex::zero(dim_);
        for (int k = dim_ - 1; k >= 0; --k) {
            alpha[k] = static_cast<int>(offset % static_cast<std::size_t>(side())) - radius_;
            offset /= static_cast<std::size_t>(side());
        }
        return alpha;
    }

    /// Components of every index in enumeration order, flattened (size() * dim()).
    std::vector<int> component_table() const
    {
        std::vector<int> table(size_ * static_cast<std::size_t>(dim_));
        std::vector<int> digits(static_cast<std::size_t>(dim_), -radius_);
        for (std::size_t o = 0; o < size_; ++o) {
            std::copy(digits.begin(), digits.end(), table.begin() + static_cast<std::ptrdiff_t>(o * static_cast<std::size_t>(dim_)));
            for (int k = dim_ - 1; k >= 0; --k) {
                auto& dk = digits[static_cast<std::size_t>(k)];
                if (++dk <= radius_) break;
                dk = -radius_;
            }
        }
        return table;
    }

    friend bool operator==(const Window&, const Window&) = default;

private:
    int dim_;
    int radius_;
    std::size_t size_;
};

}  // namespace tde

#endif
