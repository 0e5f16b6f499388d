//! Best-effort OS resource probes; every probe returns `None` where the
//! platform does not expose the figure.

pub use rdfbench_core::worldsim::peak_rss_bytes;

/// User and system CPU seconds consumed by the calling thread.
#[cfg(target_os = "linux")]
pub fn thread_cpu_times() -> Option<(f64, f64)> {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: getrusage only writes into the provided struct.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_THREAD, usage.as_mut_ptr()) };
    if rc != 0 {
        return None;
    }
    // SAFETY: initialized by the successful call above.
    let usage = unsafe { usage.assume_init() };
    let secs = |t: libc::timeval| t.tv_sec as f64 + t.tv_usec as f64 / 1e6;
    Some((secs(usage.ru_utime), secs(usage.ru_stime)))
}

#[cfg(not(target_os = "linux"))]
pub fn thread_cpu_times() -> Option<(f64, f64)> {
    None
}

/// Resets the resident-memory high-water mark so that a later
/// [`peak_rss_bytes`] reflects only what happened since. Returns whether the
/// reset took effect.
pub fn reset_peak_rss() -> bool {
    std::fs::write("/proc/self/clear_refs", "5").is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[cfg(target_os = "linux")]
    #[test]
    fn cpu_times_advance_with_work() {
        let (u0, s0) = thread_cpu_times().unwrap();
        let mut x = 0u64;
        for i in 0..50_000_000u64 {
            x = x.wrapping_mul(31).wrapping_add(i);
        }
        std::hint::black_box(x);
        let (u1, s1) = thread_cpu_times().unwrap();
        assert!(u1 + s1 > u0 + s0);
    }

    #[cfg(target_os = "linux")]
    #[test]
    fn peak_rss_is_reported() {
        reset_peak_rss();
        assert!(peak_rss_bytes().unwrap() > 0);
    }
}
