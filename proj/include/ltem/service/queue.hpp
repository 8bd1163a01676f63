#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>

namespace ltem::service {

/// FIFO admission for the single-owner backend: one holder plus at most
/// `depth` waiters. Further requests are refused instead of queued.
class BackendQueue {
public:
    explicit BackendQueue(std::size_t depth = 1) : depth_(depth) {}

    class Ticket {
    public:
        Ticket(Ticket&& other) noexcept : queue_(other.queue_) { other.queue_ = nullptr; }
        Ticket(const Ticket&) = delete;
        Ticket& operator=(const Ticket&) = delete;
        Ticket& operator=(Ticket&&) = delete;
        ~Ticket() {
            if (queue_) queue_->release();
        }

    private:
        friend class BackendQueue;
        explicit Ticket(BackendQueue* queue) : queue_(queue) {}
        BackendQueue* queue_;
    };

    /// Blocks until it is this caller's turn; nullopt when the queue is full.
    std::optional<Ticket> enter();

    /// Requests holding or waiting for the backend.
    std::size_t outstanding() const;

private:
    void release();

    std::size_t depth_;
    mutable std::mutex mutex_;
    std::condition_variable turn_;
    std::uint64_t next_ = 0;
    std::uint64_t serving_ = 0;
};

}  // namespace ltem::service
