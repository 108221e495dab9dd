#pragma once

#include <vector>

#include "standopt/errors.hpp"

namespace standopt {

// Uniform diameter-class grid. Diameters in mm throughout. The top class is
// absorbing: trees never grow out of it.
class DiameterGrid {
  public:
    DiameterGrid() = default;

    DiameterGrid(double class_width_mm, int n_classes, double first_lower_mm = 0.0)
        : width_(class_width_mm), first_lower_(first_lower_mm), n_(n_classes) {
        if (width_ <= 0.0) throw config_error("diameter class width must be positive");
        if (n_ < 1) throw config_error("diameter grid needs at least one class");
        if (first_lower_ < 0.0) throw config_error("diameter grid lower bound must be >= 0");
    }

    int n_classes() const { return n_; }
    double class_width() const { return width_; }

    double lower(int c) const { return first_lower_ + width_ * c; }
    double upper(int c) const { return first_lower_ + width_ * (c + 1); }
    double midpoint(int c) const { return first_lower_ + width_ * (c + 0.5); }

    std::vector<double> lower_bounds() const {
        std::vector<double> b(n_);
        for (int c = 0; c < n_; ++c) b[c] = lower(c);
        return b;
    }

    // class index holding diameter d, or -1 / n_classes() when out of range
    int class_of(double d_mm) const {
        if (d_mm < first_lower_) return -1;
        int c = static_cast<int>((d_mm - first_lower_) / width_);
        return c >= n_ ? n_ : c;
    }

    bool operator==(const DiameterGrid&) const = default;

  private:
    double width_ = 50.0;
    double first_lower_ = 0.0;
    int n_ = 12;
};

} // namespace standopt
