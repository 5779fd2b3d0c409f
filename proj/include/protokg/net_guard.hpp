#pragma once

#include <string>

namespace protokg::net {

// Process-wide switch: when offline, every would-be HTTP request throws
// TransportError before touching a socket and is counted, so tests can
// prove a replayed run performed zero network calls.
void set_offline(bool offline);
bool offline();

// Number of requests blocked since the last reset.
int blocked_requests();
void reset_blocked_requests();

// Called by every transport immediately before network I/O.
void check_allowed(const std::string& what);

} // namespace protokg::net
