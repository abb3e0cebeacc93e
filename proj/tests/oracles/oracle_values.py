# Independent high-precision oracle (mpmath, 30 digits) for the frozen
# expected values in the C++ tests. Run: python3 tests/oracles/oracle_values.py
from mpmath import mp, mpf, sqrt, quad, power as pw
mp.dps=30
def defect(f,a,b):
    a=mpf(a);b=mpf(b)
    return quad(f,[a,b])/(b-a) - (( b*f(a)-a*f(b))/(b-a) + f((a+b)/2))/2
def lemma(df,a,b):
    a=mpf(a);b=mpf(b)
    g=lambda t:(t*b+(1-t)*a)*df((1-t)/2*b+(1+t)/2*a)+(t*a+(1-t)*b)*df((1-t)/2*a+(1+t)/2*b)
    return quad(g,[0,1])/4
def se2(dfa,dfb,a,b,s):
    a=mpf(a);b=mpf(b);s=mpf(s)
    D=2**(s+2)*(s+1)*(s+2)
    return (b*(s*2**(s+1)+s+2)+a*(2**(s+2)-s-2))/D*dfa+(a*(s*2**(s+1)+s+2)+b*(2**(s+2)-s-2))/D*dfb
def Lpp(a,b,p):
    a=mpf(a);b=mpf(b);return (b**(p+1)-a**(p+1))/((p+1)*(b-a))
def se5(dfa,dfb,a,b,s,q):
    s=mpf(s);q=mpf(q);p=q/(q-1)
    L=Lpp(a,b,p)**(1/p)
    h=2**(s+1)-1
    return L/(4*(2**s*(s+1))**(1/q))*((dfb**q+h*dfa**q)**(1/q)+(dfa**q+h*dfb**q)**(1/q))
def se6(dfa,dfb,a,b,s,q):
    a=mpf(a);b=mpf(b);s=mpf(s);q=mpf(q)
    A=(a+b)/2
    f1=(a*s+a+b)*dfb**q+(b*(s*2**(s+1)+1)+a*(2**(s+2)-s-3))*dfa**q
    f2=(b*s+b+a)*dfa**q+(a*(s*2**(s+1)+1)+b*(2**(s+2)-s-3))*dfb**q
    return A**(1-1/q)/(2**(2*q+s)*(s+1)*(s+2))**(1/q)*(f1**(1/q)+f2**(1/q))
print("G(2,4)",sqrt(8))
print("L(1,3,2)",sqrt(mpf(13)/3))
print("L(1,4,-1.5)",(mpf(1)/3)**(1/mpf(-1.5)))
print("defect sqrt (1,4)",defect(lambda x:sqrt(x),1,4))
print("defect x^2 (1,3)",defect(lambda x:x**2,1,3), "lemma", lemma(lambda x:2*x,1,3))
print("se2 s=.5",se2(mpf('0.5'),mpf('0.25'),1,4,'0.5'))
print("se2 s=1 (2,6)",se2(2,6,1,3,1))
print("se5",se5(mpf(2),mpf(6),1,3,1,2), "closed",(mpf(1)/8)*sqrt(Lpp(1,3,2))*(sqrt(48)+sqrt(112)))
print("se6",se6(mpf(2),mpf(6),1,3,1,2), "closed", sqrt(2)*(sqrt(256)+sqrt(640))/(4*sqrt(12)))
print("PP",mpf(2)/4*sqrt((mpf(4)+36)/2))
f=lambda x:mpf(2)/3*x**mpf(1.5); df=lambda x:sqrt(x)
print("trap (2/3)x^1.5 (1,4)",(f(1)+f(4))/2-quad(f,[1,4])/3, mpf(11)/45)
print("ADK",mpf(3)/4*sqrt(mpf(1)/3)*(df(mpf(7)/4)+df(mpf(13)/4)))
print("prop recip s=.5 (1,3)",defect(lambda x:2*sqrt(x),1,3), "(1,4)",defect(lambda x:2*sqrt(x),1,4))
print("se4 substitution rhs (1,4) s=.5", se2(mpf(1)**-0.5, mpf(4)**-0.5,1,4,'0.5'))
s=mpf('0.5'); a=mpf(1);b=mpf(4)
D=2**(s+2)*(s+1)*(s+2)
printed=(a*(s*2**(s+1)+s+2)+b*(2**(s+2)-s-2))/(D*b**s)+(a*(s-2**(s+2)+2)-b*(s*2**(s+1)+s+2))/(D*a**s)
print("se4 printed (1,4) s=.5",printed)
print("prop se4 lhs (1,3)s=.5 quad", defect(lambda x:2*sqrt(x),1,3))
print("prop recip s=0.3 (1,4)",defect(lambda x:x**mpf('0.7')/mpf('0.7'),1,4))
print("x^1/2 defect 0 to 1 int", quad(lambda x:sqrt(x),[0,1]))
print("int x^.5 0..1", mpf(2)/3)
print("sqrt(2)", sqrt(2))
