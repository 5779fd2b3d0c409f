#include "protokg/net_guard.hpp"

#include "protokg/errors.hpp"

#include <atomic>

namespace protokg::net {

namespace {
std::atomic<bool> g_offline{false};
std::atomic<int> g_blocked{0};
} // namespace

void set_offline(bool offline) { g_offline.store(offline); }

bool offline() { return g_offline.load(); }

int blocked_requests() { return g_blocked.load(); }

void reset_blocked_requests() { g_blocked.store(0); }

void check_allowed(const std::string& what) {
    if (g_offline.load()) {
        g_blocked.fetch_add(1);
        throw TransportError("network disabled (offline mode): " + what);
    }
}

} // namespace protokg::net
