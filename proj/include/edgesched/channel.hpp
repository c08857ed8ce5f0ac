#pragma once

namespace edgesched::channel {

/// Physical-layer constants for the uplink between a request and an edge node.
struct WirelessParams {
    double carrier_freq_ghz = 5.9;         // f, transmission signal frequency
    double tx_power_dbm = 21.0;            // P, transmit signal power
    double noise_mw_per_mhz = 3.9810717055349695e-12; // N0 = 10^-11.4 mW per MHz of band
};

// Empirical 5.9 GHz V2X path-loss fit:
//   PL(d, f) = 38.77 + 16.7*log10(d_m) + 18.2*log10(f_ghz)   [dB]
// Valid for d >= 1 m (the 38.77 dB reference point) and f > 0.
double path_loss_db(double distance_m, double freq_ghz);

// Received power P' = P - PL, both sides on log scales (dBm / dB).
double received_power_dbm(double tx_power_dbm, double loss_db);

// dBm -> mW: 10^(p/10). Always strictly positive.
double dbm_to_mw(double power_dbm);

// SNR of one request's allocation: signal over the noise power in its own
// band slice, N0 * b. Throws std::domain_error when bandwidth_mhz <= 0
// (an unallocated request reached the channel).
double snr(double signal_mw, double bandwidth_mhz, double noise_mw_per_mhz);

// Shannon rate b * log2(1 + SNR) in Mbit/s for b in MHz.
double tx_rate_mbps(double bandwidth_mhz, double snr);

// size / rate. Throws std::domain_error when rate <= 0 and size > 0.
double tx_time_s(double size_mbit, double rate_mbps);

// Full chain distance -> path loss -> received power -> SNR -> rate -> time.
// Strictly decreasing in bandwidth, increasing in distance and size.
double transmission_time(const WirelessParams& params, double distance_m,
                         double bandwidth_mhz, double size_mbit);

} // namespace edgesched::channel
