#include "ltem/service/queue.hpp"

namespace ltem::service {

std::optional<BackendQueue::Ticket> BackendQueue::enter() {
    std::unique_lock lock(mutex_);
    if (next_ - serving_ > depth_) return std::nullopt;
    const auto mine = next_++;
    turn_.wait(lock, [&] { return serving_ == mine; });
    return Ticket(this);
}

std::size_t BackendQueue::outstanding() const {
    std::lock_guard lock(mutex_);
    return static_cast<std::size_t>(next_ - serving_);
}

void BackendQueue::release() {
    {
        std::lock_guard lock(mutex_);
        ++serving_;
    }
    turn_.notify_all();
}

}  // namespace ltem::service
