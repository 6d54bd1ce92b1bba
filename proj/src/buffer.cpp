#include "tvopt/buffer.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

namespace tvopt {

ObservationBuffer::ObservationBuffer(std::size_t capacity, std::size_t dim)
    : capacity_(capacity), dim_(dim) {
    if (capacity_ < 1)
        throw std::invalid_argument("ObservationBuffer: capacity must be >= 1");
    storage_.resize(capacity_ * dim_);
}

void ObservationBuffer::push(std::int64_t k, std::span<const double> obs) {
    if (obs.size() != dim_)
        throw std::invalid_argument("ObservationBuffer::push: observation has dim " +
                                    std::to_string(obs.size()) + ", expected " +
                                    std::to_string(dim_));
    if (size_ > 0 && k != latest_step_ + 1)
        throw std::invalid_argument("ObservationBuffer::push: step " + std::to_string(k) +
                                    " breaks contiguity (latest is " +
                                    std::to_string(latest_step_) + ")");
    head_ = (head_ + capacity_ - 1) % capacity_;
    if (dim_ > 0)
        std::memcpy(storage_.data() + head_ * dim_, obs.data(), dim_ * sizeof(double));
    if (size_ < capacity_) ++size_;
    latest_step_ = k;
}

const double* ObservationBuffer::row(std::size_t i) const {
    if (i >= size_)
        throw std::out_of_range("ObservationBuffer::row: index " + std::to_string(i) +
                                " >= size " + std::to_string(size_));
    return storage_.data() + ((head_ + i) % capacity_) * dim_;
}

void ObservationBuffer::clear() {
    size_ = 0;
    head_ = 0;
    latest_step_ = -1;
}

}  // namespace tvopt
