#include "cvssi/similarity.hpp"

#include "cvssi/error.hpp"

namespace cvssi {

SimilarityMap similarity_map(const Plane& a, const Plane& b, double c, Feature feature) {
    if (!a.same_size(b))
        throw ShapeError("dimension mismatch between feature maps");
    if (a.empty())
        throw ShapeError("empty feature map");
    if (!(c > 0.0))
        throw ConfigError("stabilizing constant must be positive");

    SimilarityMap out{Plane(a.width(), a.height()), feature};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.samples()[i];
        const double y = b.samples()[i];
        out.plane.samples()[i] = (2.0 * x * y + c) / (x * x + y * y + c);
    }
    return out;
}

} // namespace cvssi
