//! Hand-built complexes for the ground field and `k^m`, with ranks taken by a
//! small elimination mod a large prime.

const P: i64 = 1_000_003;

fn rank(mut a: Vec<Vec<i64>>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c].rem_euclid(P) != 0) else { continue };
        a.swap(r, p);
        let inv = pow(a[r][c].rem_euclid(P), P - 2);
        for i in 0..a.len() {
            if i != r && a[i][c].rem_euclid(P) != 0 {
                let k = a[i][c].rem_euclid(P) * inv % P;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - k * a[r][j]).rem_euclid(P);
                }
            }
        }
        r += 1;
    }
    r
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut x = 1;
    while e > 0 {
        if e & 1 == 1 {
            x = x * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    x
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..m).map(|j| (0..k).map(|t| row[t] * b[t][j]).sum::<i64>().rem_euclid(P)).collect()).collect()
}

/// Cohomology dimensions in degrees `0..=top` from `dims[n]` and `d[n]: n → n+1`.
fn cohomology(dims: &[usize], d: &[Vec<Vec<i64>>], top: usize) -> Vec<usize> {
    let r: Vec<usize> = d.iter().map(|m| rank(m.clone())).collect();
    (0..=top).map(|n| dims[n] - r[n] - if n == 0 { 0 } else { r[n - 1] }).collect()
}

/// Words of length `n+1` over `m` group-likes, as base-`m` numbers.
fn words(m: usize, n: usize) -> usize {
    m.pow(n as u32 + 1)
}

fn digits(m: usize, n: usize, mut w: usize) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    for i in (0..=n).rev() {
        v[i] = w % m;
        w /= m;
    }
    v
}

fn number(m: usize, v: &[usize]) -> usize {
    v.iter().fold(0, |a, &x| a * m + x)
}

/// The Hochschild differential on `k^m`: doubling each letter with sign
/// `(−1)^i`, plus the cyclic coface appending the first letter.
fn hochschild_b(m: usize, n: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0; words(m, n)]; words(m, n + 1)];
    for w in 0..words(m, n) {
        let v = digits(m, n, w);
        for i in 0..=n {
            let mut u = v.clone();
            u.insert(i, v[i]);
            b[number(m, &u)][w] += if i % 2 == 0 { 1 } else { -1 };
        }
        let mut u = v.clone();
        u.push(v[0]);
        b[number(m, &u)][w] += if (n + 1) % 2 == 0 { 1 } else { -1 };
    }
    b
}

pub fn oracle_hoch(m: usize, top: usize) -> Vec<usize> {
    let d: Vec<_> = (0..=top).map(|n| hochschild_b(m, n)).collect();
    for n in 0..top {
        assert!(mul(&d[n + 1], &d[n]).iter().flatten().all(|&x| x == 0));
    }
    let dims: Vec<usize> = (0..=top + 1).map(|n| words(m, n)).collect();
    cohomology(&dims, &d, top)
}

/// Cyclic bicomplex of `k`: each entry one-dimensional, vertical maps
/// `b = [n odd]`, `b′ = [n even]`, horizontal `1 − T = 1 − (−1)^n` out of even
/// columns and `N = Σ T^i` out of odd ones; `D = h + (−1)^j d_v`.
pub fn oracle_hc(top: usize) -> Vec<usize> {
    let cols = top + 2;
    let cells = |t: usize| (0..=t.min(cols - 1)).map(move |j| (j, t - j)).collect::<Vec<_>>();
    let t_sign = |n: usize| if n % 2 == 0 { 1 } else { -1 };
    let vert = |j: usize, n: usize| -> i64 {
        let v = if j % 2 == 0 { n % 2 == 1 } else { n % 2 == 0 };
        (v as i64) * if j % 2 == 0 { 1 } else { -1 }
    };
    let horiz = |j: usize, n: usize| -> i64 {
        if j % 2 == 0 {
            1 - t_sign(n)
        } else {
            (0..=n).map(|i| t_sign(n).pow(i as u32)).sum()
        }
    };
    let mut d = Vec::new();
    let mut dims = Vec::new();
    for t in 0..=top + 1 {
        let (src, dst) = (cells(t), cells(t + 1));
        dims.push(src.len());
        let mut m = vec![vec![0; src.len()]; dst.len()];
        for (c, &(j, n)) in src.iter().enumerate() {
            for (r, &(j2, n2)) in dst.iter().enumerate() {
                if j2 == j && n2 == n + 1 {
                    m[r][c] = vert(j, n);
                } else if j2 == j + 1 && n2 == n {
                    m[r][c] = horiz(j, n);
                }
            }
        }
        d.push(m);
    }
    for t in 0..=top {
        assert!(mul(&d[t + 1], &d[t]).iter().flatten().all(|&x| x.rem_euclid(P) == 0));
    }
    cohomology(&dims, &d, top)
}
