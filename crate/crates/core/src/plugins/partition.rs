//! Label canonicalization and enumeration of label sequences.

/// Relabels every non-frozen label by order of first occurrence, starting at 1.
/// Frozen labels pass through unchanged.
pub fn normalize_partition(labels: &mut [i8], frozen: impl Fn(i8) -> bool) {
    let mut map: Vec<(i8, i8)> = Vec::new();
    let mut counter = 0i8;
    for l in labels.iter_mut() {
        if frozen(*l) {
            continue;
        }
        let new = match map.iter().find(|&&(old, _)| old == *l) {
            Some(&(_, new)) => new,
            None => {
                counter += 1;
                map.push((*l, counter));
                counter
            }
        };
        *l = new;
    }
}

/// Canonical form with nothing frozen.
pub fn normalized(labels: &[i8]) -> Vec<i8> {
    let mut out = labels.to_vec();
    normalize_partition(&mut out, |_| false);
    out
}

/// Calls `emit` on every restricted growth string of length `len` using at
/// most `max_blocks` labels (`c_1 = 1`, `c_i <= 1 + max(c_1..c_{i-1})`).
/// Stops when `emit` returns false; the return value reports completion.
pub fn for_each_rgs(len: usize, max_blocks: usize, emit: &mut dyn FnMut(&[i8]) -> bool) -> bool {
    fn rec(buf: &mut Vec<i8>, len: usize, max: i8, cap: i8, emit: &mut dyn FnMut(&[i8]) -> bool) -> bool {
        if buf.len() == len {
            return emit(buf);
        }
        for c in 1..=(max + 1).min(cap) {
            buf.push(c);
            let go = rec(buf, len, max.max(c), cap, emit);
            buf.pop();
            if !go {
                return false;
            }
        }
        true
    }
    let cap = max_blocks.min(i8::MAX as usize) as i8;
    rec(&mut Vec::with_capacity(len), len, 0, cap, emit)
}

/// Calls `emit` on every canonical endpoint labeling of length `len`: each
/// entry is one of the `frozen` values or a positive id in first-occurrence
/// order, and each id occurs at most twice (exactly twice when `paired`).
pub fn for_each_endpoint_labeling(
    len: usize,
    frozen: &[i8],
    paired: bool,
    emit: &mut dyn FnMut(&[i8]) -> bool,
) -> bool {
    struct Ctx<'a> {
        len: usize,
        frozen: &'a [i8],
        paired: bool,
        counts: Vec<u8>,
        buf: Vec<i8>,
    }
    fn rec(ctx: &mut Ctx<'_>, emit: &mut dyn FnMut(&[i8]) -> bool) -> bool {
        let pos = ctx.buf.len();
        let open = ctx.counts.iter().filter(|&&c| c == 1).count();
        if ctx.paired && open > ctx.len - pos {
            return true;
        }
        if pos == ctx.len {
            return emit(&ctx.buf);
        }
        for i in 0..ctx.frozen.len() {
            let f = ctx.frozen[i];
            ctx.buf.push(f);
            let go = rec(ctx, emit);
            ctx.buf.pop();
            if !go {
                return false;
            }
        }
        for id in 0..=ctx.counts.len() {
            if id == ctx.counts.len() {
                ctx.counts.push(0);
            } else if ctx.counts[id] >= 2 {
                continue;
            }
            ctx.counts[id] += 1;
            ctx.buf.push(id as i8 + 1);
            let go = rec(ctx, emit);
            ctx.buf.pop();
            ctx.counts[id] -= 1;
            if id + 1 == ctx.counts.len() && ctx.counts[id] == 0 {
                ctx.counts.pop();
            }
            if !go {
                return false;
            }
        }
        true
    }
    let mut ctx = Ctx {
        len,
        frozen,
        paired,
        counts: Vec::new(),
        buf: Vec::with_capacity(len),
    };
    rec(&mut ctx, emit)
}
